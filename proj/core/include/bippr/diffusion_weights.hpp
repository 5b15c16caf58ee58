#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace bippr {

enum class DiffusionFamily { PageRank, HeatKernel };

/// Parses "pagerank" / "heat-kernel"; throws DomainError otherwise.
DiffusionFamily parse_family(std::string_view name);
std::string_view family_name(DiffusionFamily family) noexcept;

/// Nonnegative length weights alpha_0..alpha_L of a truncated diffusion
/// sum_l alpha_l (e_s W^l), plus the closed-form mass of the dropped tail.
struct DiffusionWeights {
    std::vector<double> alphas;
    double tail = 0.0;

    std::size_t ell_max() const noexcept { return alphas.empty() ? 0 : alphas.size() - 1; }
    /// Throws DomainError unless weights are nonnegative, nonempty and
    /// sum with the tail to 1 within 1e-12.
    void validate() const;
};

/// alpha_i = alpha (1 - alpha)^i, tail = (1 - alpha)^(ell_max + 1).
DiffusionWeights pagerank_weights(double alpha, std::size_t ell_max);

/// alpha_i = e^-gamma gamma^i / i!, tail = 1 - sum (floored at 0).
/// gamma must lie in (0, 700] so that e^-gamma is a normal double.
DiffusionWeights heat_kernel_weights(double gamma, std::size_t ell_max);

/// Weights for a family; `param` is alpha for PageRank, gamma for the heat kernel.
DiffusionWeights make_weights(DiffusionFamily family, double param, std::size_t ell_max);

/// Smallest ell_max whose tail is at most trunc_tol (relative slack 1e-12
/// absorbs rounding in the closed forms). trunc_tol must lie in (0, 1].
std::size_t choose_ell_max(DiffusionFamily family, double param, double trunc_tol);

}  // namespace bippr
