#include "wavelet_filters.hpp"

#include <array>
#include <stdexcept>

namespace dtssfn::detail {
namespace {
// haar
constexpr std::array<double, 2> k_haar_lo = {
    0.7071067811865476, 0.7071067811865476};
constexpr std::array<double, 2> k_haar_hi = {
    0.7071067811865476, -0.7071067811865476};
// db4
constexpr std::array<double, 8> k_db4_lo = {
    0.2303778133088965, 0.7148465705529157, 0.6308807679298589,
    -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
    0.0328830116668852, -0.010597401785069032};
constexpr std::array<double, 8> k_db4_hi = {
    -0.010597401785069032, -0.0328830116668852, 0.030841381835560764,
    0.18703481171909309, -0.027983769416859854, -0.6308807679298589,
    0.7148465705529157, -0.2303778133088965};
// db20
constexpr std::array<double, 40> k_db20_lo = {
    0.0007799536136668463, 0.010549394624950399, 0.06342378045908152,
    0.21994211355139703, 0.4726961853109017, 0.6104932389385939,
    0.36150229873933104, -0.13921208801148388, -0.32678680043403496,
    -0.016727088309077008, 0.22829105081991632, 0.0398502464577712,
    -0.15545875070726795, -0.024716827338613585, 0.10229171917444256,
    0.005632246857307436, -0.06172289962468046, 0.005874681811811827,
    0.03229429953076958, -0.00878932492390156, -0.01381052613715192,
    0.006721627302259457, 0.004420542387045791, -0.0035814942596096226,
    -0.0008315621728225569, 0.0013925596193231364, -5.349759843997695e-05,
    -0.00038510474869921763, 0.00010153288973670291, 6.77428082837773e-05,
    -3.710586183394713e-05, -4.376143862183997e-06, 7.2412482876736205e-06,
    -1.0119940100188862e-06, -6.847079597000557e-07, 2.6339242262700013e-07,
    2.0143220235505126e-10, -1.814843248299696e-08, 4.056127055551833e-09,
    -2.9988364896193194e-10};
constexpr std::array<double, 40> k_db20_hi = {
    -2.9988364896193194e-10, -4.056127055551833e-09, -1.814843248299696e-08,
    -2.0143220235505126e-10, 2.6339242262700013e-07, 6.847079597000557e-07,
    -1.0119940100188862e-06, -7.2412482876736205e-06, -4.376143862183997e-06,
    3.710586183394713e-05, 6.77428082837773e-05, -0.00010153288973670291,
    -0.00038510474869921763, 5.349759843997695e-05, 0.0013925596193231364,
    0.0008315621728225569, -0.0035814942596096226, -0.004420542387045791,
    0.006721627302259457, 0.01381052613715192, -0.00878932492390156,
    -0.03229429953076958, 0.005874681811811827, 0.06172289962468046,
    0.005632246857307436, -0.10229171917444256, -0.024716827338613585,
    0.15545875070726795, 0.0398502464577712, -0.22829105081991632,
    -0.016727088309077008, 0.32678680043403496, -0.13921208801148388,
    -0.36150229873933104, 0.6104932389385939, -0.4726961853109017,
    0.21994211355139703, -0.06342378045908152, 0.010549394624950399,
    -0.0007799536136668463};
// sym2
constexpr std::array<double, 4> k_sym2_lo = {
    0.48296291314469025, 0.836516303737469, 0.22414386804185735,
    -0.12940952255092145};
constexpr std::array<double, 4> k_sym2_hi = {
    -0.12940952255092145, -0.22414386804185735, 0.836516303737469,
    -0.48296291314469025};
// coif1
constexpr std::array<double, 6> k_coif1_lo = {
    -0.07273261951252645, 0.3378976624574818, 0.8525720202116004,
    0.3848648468648578, -0.07273261951252645, -0.015655728135791993};
constexpr std::array<double, 6> k_coif1_hi = {
    -0.015655728135791993, 0.07273261951252645, 0.3848648468648578,
    -0.8525720202116004, 0.3378976624574818, 0.07273261951252645};
// rbio1.1
constexpr std::array<double, 2> k_rbior11_lo = {
    0.7071067811865476, 0.7071067811865476};
constexpr std::array<double, 2> k_rbior11_hi = {
    0.7071067811865476, -0.7071067811865476};
// bior1.3
constexpr std::array<double, 6> k_bior13_analysis_lo = {
    -0.08838834764831845, 0.08838834764831845, 0.7071067811865476,
    0.7071067811865476, 0.08838834764831845, -0.08838834764831845};
constexpr std::array<double, 6> k_bior13_analysis_hi = {
    0.0, 0.0, 0.7071067811865476,
    -0.7071067811865476, 0.0, 0.0};
constexpr std::array<double, 6> k_bior13_synthesis_lo = {
    0.0, 0.0, 0.7071067811865476,
    0.7071067811865476, 0.0, 0.0};
constexpr std::array<double, 6> k_bior13_synthesis_hi = {
    -0.08838834764831845, -0.08838834764831845, 0.7071067811865476,
    -0.7071067811865476, 0.08838834764831845, 0.08838834764831845};

template <std::size_t N>
FilterBank orthogonal(const std::array<double, N>& lo, const std::array<double, N>& hi) {
  return {lo, hi, lo, hi};
}

}  // namespace

FilterBank filter_bank(TransformTag tag) {
  switch (tag) {
    case TransformTag::Haar: return orthogonal(k_haar_lo, k_haar_hi);
    case TransformTag::Db4: return orthogonal(k_db4_lo, k_db4_hi);
    case TransformTag::Db20: return orthogonal(k_db20_lo, k_db20_hi);
    case TransformTag::Sym2: return orthogonal(k_sym2_lo, k_sym2_hi);
    case TransformTag::Coif1: return orthogonal(k_coif1_lo, k_coif1_hi);
    case TransformTag::Rbior11: return orthogonal(k_rbior11_lo, k_rbior11_hi);
    case TransformTag::Bior13:
      return {k_bior13_analysis_lo, k_bior13_analysis_hi, k_bior13_synthesis_lo, k_bior13_synthesis_hi};
    default: break;
  }
  throw std::logic_error("filter_bank: not a wavelet kind");
}

}  // namespace dtssfn::detail
