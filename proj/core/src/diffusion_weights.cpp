#include "bippr/diffusion_weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bippr/errors.hpp"

namespace bippr {

namespace {

constexpr double kTailSlack = 1e-12;
constexpr std::size_t kMaxEll = 1'000'000;

void require_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma <= 700.0)) {
        throw DomainError("heat-kernel gamma must lie in (0, 700]");
    }
}

double pagerank_tail(double alpha, std::size_t ell_max) {
    return std::pow(1.0 - alpha, static_cast<double>(ell_max) + 1.0);
}

}  // namespace

DiffusionFamily parse_family(std::string_view name) {
    if (name == "pagerank") {
        return DiffusionFamily::PageRank;
    }
    if (name == "heat-kernel") {
        return DiffusionFamily::HeatKernel;
    }
    throw DomainError("unknown diffusion family '" + std::string(name) + "'");
}

std::string_view family_name(DiffusionFamily family) noexcept {
    return family == DiffusionFamily::PageRank ? "pagerank" : "heat-kernel";
}

void DiffusionWeights::validate() const {
    if (alphas.empty()) {
        throw DomainError("diffusion weights are empty");
    }
    double total = tail;
    for (const double a : alphas) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw DomainError("diffusion weights must be nonnegative");
        }
        total += a;
    }
    if (!(tail >= 0.0) || std::abs(total - 1.0) > 1e-12) {
        throw DomainError("diffusion weights plus tail must sum to 1");
    }
}

DiffusionWeights pagerank_weights(double alpha, std::size_t ell_max) {
    detail::require_teleport(alpha);
    DiffusionWeights w;
    w.alphas.resize(ell_max + 1);
    double geometric = 1.0;
    for (auto& a : w.alphas) {
        a = alpha * geometric;
        geometric *= 1.0 - alpha;
    }
    w.tail = pagerank_tail(alpha, ell_max);
    return w;
}

DiffusionWeights heat_kernel_weights(double gamma, std::size_t ell_max) {
    require_gamma(gamma);
    DiffusionWeights w;
    w.alphas.resize(ell_max + 1);
    w.alphas[0] = std::exp(-gamma);
    double total = w.alphas[0];
    for (std::size_t i = 1; i <= ell_max; ++i) {
        w.alphas[i] = w.alphas[i - 1] * gamma / static_cast<double>(i);
        total += w.alphas[i];
    }
    w.tail = std::max(0.0, 1.0 - total);
    return w;
}

DiffusionWeights make_weights(DiffusionFamily family, double param, std::size_t ell_max) {
    return family == DiffusionFamily::PageRank ? pagerank_weights(param, ell_max)
                                               : heat_kernel_weights(param, ell_max);
}

std::size_t choose_ell_max(DiffusionFamily family, double param, double trunc_tol) {
    if (!(trunc_tol > 0.0 && trunc_tol <= 1.0)) {
        throw DomainError("truncation tolerance must lie in (0, 1]");
    }
    const double limit = trunc_tol * (1.0 + kTailSlack);

    if (family == DiffusionFamily::PageRank) {
        detail::require_teleport(param);
        const double guess = std::ceil(std::log(trunc_tol) / std::log1p(-param)) - 1.0;
        auto ell = static_cast<std::size_t>(std::clamp(guess, 0.0, static_cast<double>(kMaxEll)));
        // Correct the closed form against the exact tail it is meant to bound.
        while (ell > 0 && pagerank_tail(param, ell - 1) <= limit) {
            --ell;
        }
        while (pagerank_tail(param, ell) > limit) {
            if (++ell > kMaxEll) {
                throw DomainError("truncation tolerance unreachable");
            }
        }
        return ell;
    }

    require_gamma(param);
    double term = std::exp(-param);
    double head = term;
    std::size_t ell = 0;
    while (1.0 - head > limit) {
        ++ell;
        if (ell > kMaxEll) {
            throw DomainError("truncation tolerance unreachable");
        }
        term *= param / static_cast<double>(ell);
        const double next = head + term;
        if (next == head && static_cast<double>(ell) > param) {
            throw DomainError("truncation tolerance below double precision of the Poisson tail");
        }
        head = next;
    }
    return ell;
}

}  // namespace bippr
