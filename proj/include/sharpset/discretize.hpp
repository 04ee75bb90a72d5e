#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpset/rational.hpp"

namespace sharpset {

enum class Family { Static, DynCond, DynUncond, TwoLag };
enum class Restriction { Stationary, Exchangeable };

std::string to_string(Family f);
std::string to_string(Restriction r);
Family parse_family(const std::string& s);
Restriction parse_restriction(const std::string& s);

// Raised for invalid user-supplied model or run configurations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Alternatives are stored 0-based. label_base only affects how they print:
// binary models (D = 2) use {0,1}, larger models use 1..D.
struct ModelSpec {
  Family family = Family::Static;
  int D = 2;
  int T = 2;
  Restriction restriction = Restriction::Stationary;
  Mat v;  // D x T index values v_{dt}
  Rat gamma;
  Rat gamma1, gamma2;
  int y0 = 0;
  int y_minus1 = 0;

  int label_base() const { return D == 2 ? 0 : 1; }
  void validate() const;
};

// Binary index form helpers. The one-lag binary model
// Y_t = 1{v_t + g*Y_{t-1} - e_t > 0} is the D = 2 multinomial model with
// v_{1t} = v_t, v_{0t} = 0 and gamma = g/2: both give the same threshold order.
ModelSpec binary_static(const Vec& v);
ModelSpec kpt_uncond(const Vec& v, const Rat& g);
ModelSpec kpt_cond(const Vec& v, const Rat& g, int y0);
ModelSpec two_lag(const Vec& v, const Rat& g1, const Rat& g2, int y0, int y_minus1);

// Family-tagged payload over 0-based alternatives.
//   Static:    (d_1..d_T)
//   DynCond:   (c, C) with C row-major (T-1) x D; C(t-1, s) is the choice in
//              period t given state s
//   DynUncond: T x D row-major; f(t, s) is the choice in period t given state s
//   TwoLag:    7 binary entries
struct Patch {
  std::vector<int> payload;
  bool operator==(const Patch&) const = default;
  bool operator<(const Patch& o) const { return payload < o.payload; }
};

// One "slot" per entry of the patch payload: the per-alternative utility
// shift u_d, so that alternative d is chosen iff u_d + zeta_d beats every
// other alternative.
std::vector<Vec> slot_utilities(const ModelSpec& spec);

enum class PatchMethod { Auto, LinearProgram, ClosedForm };

std::vector<Patch> static_patches(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);
std::vector<Patch> dyn_cond_patches(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);
std::vector<Patch> dyn_uncond_patches(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);
std::vector<Patch> ar2_patches(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);
std::vector<Patch> patches(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);

// Strict system of a full or partial payload: rows of {zeta : M zeta < b}.
void patch_system(const std::vector<Vec>& slots, const std::vector<int>& payload, Mat& M, Vec& b);
bool patch_is_feasible(const ModelSpec& spec, const Patch& p);

using Region = std::vector<std::size_t>;
std::vector<Region> regions(std::size_t patch_count, int T);

}  // namespace sharpset
