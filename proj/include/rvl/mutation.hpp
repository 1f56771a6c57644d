#ifndef RVL_MUTATION_HPP
#define RVL_MUTATION_HPP

namespace rvl::mutation {

// Fault-injection switches for the acceptance suite's sensitivity checks.
// All false in normal operation; flipping one must make a named acceptance
// criterion fail, proving the corresponding tests are not vacuous.
inline bool k1_off_by_one = false;        // ceil(k0) -> ceil(k0) + 1
inline bool dominance_off_by_one = false; // partial-sum comparison shifted by 1
inline bool minor_sum_off_by_one = false; // minor-valuation partial sums shifted

}  // namespace rvl::mutation

#endif
