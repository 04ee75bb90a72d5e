#pragma once

#include <string>
#include <vector>

#include "sharpset/rational.hpp"

namespace sharpset {

// Inequality y'p <= 0 over outcome probabilities p.
struct IneqVector {
  Vec y;
  Rat rank;  // 1'y
  std::string provenance;

  IneqVector() = default;
  IneqVector(Vec v, std::string prov = {});
};

struct Removal {
  Vec y;
  std::string reason;  // "trivial", "duplicate" or "implied"
  // For "implied": y <= sum_s lambda_s * against_s componentwise.
  std::vector<Vec> against;
  Vec lambda;
};

struct IneqSet {
  std::vector<IneqVector> vectors;
  std::vector<std::string> labels;
  std::vector<Removal> log;

  std::vector<Vec> ys() const;
};

// Exact duplicates removed, lexicographic order.
IneqSet canonicalize(std::vector<IneqVector> vectors, std::vector<std::string> labels = {});

// Trivial vectors (y <= 0) first, then one sequential Farkas pass in
// canonical order: y_k is dropped iff y_k <= L * lambda for some
// lambda >= 0 over the vectors still in the list.
IneqSet eliminate_redundant(std::vector<IneqVector> vectors, std::vector<std::string> labels = {});

// Searches lambda >= 0 with y <= sum_s lambda_s * others_s.
bool implied_by(const Vec& y, const std::vector<Vec>& others, Vec* lambda = nullptr);

// Checks a stored witness with exact arithmetic.
bool verify_removal(const Removal& r);

std::vector<IneqVector> as_ineqs(const std::vector<Vec>& ys, const std::string& provenance);

}  // namespace sharpset
