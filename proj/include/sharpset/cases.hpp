#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sharpset/discretize.hpp"

namespace sharpset {

// A family's local models are indexed by weak orderings of a few threshold
// quantities, each a linear form in the free parameters. The patch set of the
// discretized model depends only on that ordering.
struct ThresholdForm {
  std::string label;
  Vec coef;  // over CaseFamily::params
};

struct CaseFamily {
  Family family = Family::Static;
  int D = 2, T = 2;
  int y0 = 0, y_minus1 = 0;
  Restriction restriction = Restriction::Stationary;
  std::vector<std::string> params;
  std::vector<ThresholdForm> forms;

  Vec evaluate(const Vec& p) const;
  ModelSpec spec_for(const Vec& p) const;
};

// Supported: static (T = 2), binary dynamic with or without conditioning on
// the initial state (T = 2), binary two-lag (T = 3). Anything else is refused.
CaseFamily case_family(Family f, int D, int T, int y0 = 0, int y_minus1 = 0,
                       Restriction r = Restriction::Stationary);

// Blocks of form indices, lowest first; forms in one block are tied.
using WeakOrder = std::vector<std::vector<std::size_t>>;

std::string describe(const CaseFamily& fam, const WeakOrder& order);
// Inverse of describe: "v1 < v2 = v1+g < v2+g". Throws ValidationError.
WeakOrder parse_order(const CaseFamily& fam, const std::string& text);
// The ordering the forms take at p.
WeakOrder order_at(const CaseFamily& fam, const Vec& p);

struct Realization {
  bool ok = false;
  Vec witness;  // params realizing the ordering strictly
};

// Strict-feasibility LP: unit gaps between consecutive blocks, equalities
// inside blocks. The witness maximizes the sum of the forms with every form
// at most the number of forms, which gives small integer representatives.
Realization realizable(const CaseFamily& fam, const WeakOrder& order);

// A different realization of the same ordering: midpoint of the witness and
// the vertex maximizing a seeded random objective.
Vec redraw_representative(const CaseFamily& fam, const WeakOrder& order, std::uint64_t seed);

enum class Symmetry { None, Canonical };
Symmetry parse_symmetry(const std::string& s);

struct CaseDescriptor {
  WeakOrder order;
  std::string text;
  Vec representative;
  bool realizable = true;
  ModelSpec spec;
};

// Realizable orderings. Canonical applies the documented quotients: static
// models keep index differences non-increasing in the alternative index
// (relabel alternatives), the unconditional binary dynamic model keeps
// v1 <= v2 (relabel periods). Other families enumerate fully.
std::vector<CaseDescriptor> enumerate_cases(const CaseFamily& fam, Symmetry symmetry);

}  // namespace sharpset
