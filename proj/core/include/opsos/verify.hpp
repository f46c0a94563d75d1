#ifndef OPSOS_VERIFY_HPP
#define OPSOS_VERIFY_HPP

#include <string>
#include <vector>

namespace opsos::verify {

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> messages;  // first few failure descriptions

  bool ok() const { return failures == 0; }
};

// Names in execution order for verify-all.
std::vector<std::string> suite_names();

// Runs one named invariant suite; throws std::invalid_argument for unknown
// names. Deterministic (fixed seeds).
SuiteResult run_suite(const std::string& name);

// ---- Reusable exhaustive checkers (also driven by the acceptance suite) ---

// Chain-insertion identity on r+1 indices, all pi in S_r, all total orders.
bool insertion_identity_exhaustive(int r_max, std::string* msg = nullptr);

// sum over pi in S_k of the chain monomial equals 1 on every total order.
bool case_split_identity_exhaustive(int k_max, std::string* msg = nullptr);

// The sum-of-squares rewriting of sum x_i - 1 holds on every Boolean point.
bool min_element_identity_exhaustive(int k_max, std::string* msg = nullptr);

// E_n[((prod_{j in A} z_j) q)^2] = E_n[(prod_{j in A} w_j) q^2], d = 2 scope.
bool decomposition_lemma_exhaustive(int n_max, std::string* msg = nullptr);

// Binomial-ratio comparison between the n-point and 2n-point distributions,
// exhaustive over d2 <= n and 0 < k <= n - d2.
bool lemma_2n_to_n_exhaustive(int n_max, std::string* msg = nullptr);

}  // namespace opsos::verify

#endif
