#ifndef FFQE_BUDGET_HPP
#define FFQE_BUDGET_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "ffqe/errors.hpp"

namespace ffqe {

// Resource caps threaded through basis computation and generator expansion.
// Zero means unlimited. All checks throw BudgetExhausted; partial results are
// discarded by the caller, so an exhausted budget can never yield a wrong answer.
struct Budget {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t max_basis_size = 0;
    std::size_t max_term_count = 0;

    static Budget with_seconds(double secs) {
        Budget b;
        b.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(secs));
        return b;
    }

    void check_time(const char* where) const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw BudgetExhausted(std::string("budget exhausted (wall clock) in ") + where);
    }
    void check_basis(std::size_t size) const {
        if (max_basis_size && size > max_basis_size)
            throw BudgetExhausted("budget exhausted (basis size cap " +
                                  std::to_string(max_basis_size) + ")");
    }
    void check_terms(std::size_t terms) const {
        if (max_term_count && terms > max_term_count)
            throw BudgetExhausted("budget exhausted (term count cap " +
                                  std::to_string(max_term_count) + ")");
    }
};

} // namespace ffqe

#endif
