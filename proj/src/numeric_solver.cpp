#include "endopriv/numeric_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include "endopriv/closed_form.hpp"

namespace endopriv {

void SolverSettings::validate() const {
    if (grid_points < 16) throw std::invalid_argument("grid_points must be at least 16");
    if (!(refine_tolerance > 0.0)) throw std::invalid_argument("refine_tolerance must be positive");
    if (!(tolerance > refine_tolerance)) {
        throw std::invalid_argument("tolerance must exceed refine_tolerance");
    }
    if (interval_min_run < 1) throw std::invalid_argument("interval_min_run must be positive");
}

namespace {

constexpr int kMaxBisections = 200;

struct Root {
    double alpha = 0.0;
    double abs_residual = 0.0;
};

// Bisection that remembers the best point it has seen, including the ends.
Root bisect(const ResidualFn& f, double lo, double hi, double flo, double fhi, double width) {
    Root best = std::fabs(flo) <= std::fabs(fhi) ? Root{lo, std::fabs(flo)}
                                                 : Root{hi, std::fabs(fhi)};
    for (int it = 0; it < kMaxBisections && hi - lo > width && best.abs_residual > width; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (std::fabs(fm) < best.abs_residual) best = {mid, std::fabs(fm)};
        if (fm == 0.0) break;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return best;
}

// Moves from a flat point towards a non-flat one until the boundary between
// them is pinned to `width`.
double bisect_edge(const ResidualFn& f, double inside, double outside, double flat, double width) {
    for (int it = 0; it < kMaxBisections && std::fabs(outside - inside) > width; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) break;
        if (std::fabs(f(mid)) <= flat) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return inside;
}

}  // namespace

EquilibriumSet scan_residual(const ResidualFn& f, const SolverSettings& settings) {
    settings.validate();
    const int g = settings.grid_points;
    const double step = 1.0 / g;
    const double tol = settings.tolerance;
    const double flat_tol = settings.refine_tolerance;

    std::vector<double> a(static_cast<std::size_t>(g));
    std::vector<double> r(a.size());
    for (int i = 0; i < g; ++i) {
        a[i] = static_cast<double>(i + 1) / g;
        r[i] = f(a[i]);
    }
    auto flat = [&](int i) { return std::fabs(r[i]) <= flat_tol; };
    auto hit = [&](int i) { return std::fabs(r[i]) <= tol; };

    EquilibriumSet out;
    out.source = Source::numeric;
    std::vector<bool> covered(a.size(), false);

    // Continua: long flat runs that survive 4x refinement.
    for (int i = 0; i < g;) {
        if (!flat(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < g && flat(j + 1)) ++j;
        bool verified = j - i + 1 >= settings.interval_min_run;
        for (int m = i; verified && m < j; ++m) {
            for (int t = 1; t <= 3 && verified; ++t) {
                verified = std::fabs(f(a[m] + t * step / 4.0)) <= tol;
            }
        }
        if (verified) {
            EquilibriumInterval iv;
            iv.lo = i == 0 ? a[0] : bisect_edge(f, a[i], a[i - 1], flat_tol, flat_tol);
            iv.hi = j == g - 1 ? 1.0 : bisect_edge(f, a[j], a[j + 1], flat_tol, flat_tol);
            out.intervals.push_back(iv);
            for (int m = i; m <= j; ++m) covered[m] = true;
        }
        i = j + 1;
    }

    std::vector<Root> roots;
    for (int i = 0; i < g; ++i) {
        if (r[i] == 0.0 && !covered[i]) roots.push_back({a[i], 0.0});
    }
    for (int i = 0; i + 1 < g; ++i) {
        if (!(r[i] * r[i + 1] < 0.0)) continue;
        const Root root = bisect(f, a[i], a[i + 1], r[i], r[i + 1], settings.refine_tolerance);
        // A bracket that cannot be squeezed below tolerance straddles a jump.
        if (root.abs_residual <= tol) roots.push_back(root);
    }

    // Near-misses and tangencies: hit runs that hold no root of their own.
    for (int i = 0; i < g;) {
        if (!hit(i) || covered[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < g && hit(j + 1) && !covered[j + 1]) ++j;
        const bool has_root = std::any_of(roots.begin(), roots.end(), [&](const Root& x) {
            return x.alpha >= a[i] - step && x.alpha <= a[j] + step;
        });
        if (!has_root) {
            int best = i;
            for (int m = i + 1; m <= j; ++m) {
                if (std::fabs(r[m]) < std::fabs(r[best])) best = m;
            }
            roots.push_back({a[best], std::fabs(r[best])});
        }
        i = j + 1;
    }

    std::erase_if(roots, [&](const Root& x) {
        if (x.alpha <= tol) return true;
        return std::any_of(out.intervals.begin(), out.intervals.end(), [&](const auto& iv) {
            return x.alpha >= iv.lo - step && x.alpha <= iv.hi + step;
        });
    });
    std::sort(roots.begin(), roots.end(),
              [](const Root& x, const Root& y) { return x.alpha < y.alpha; });

    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i;
        Root best = roots[i];
        while (j + 1 < roots.size() && roots[j + 1].alpha - roots[j].alpha <= step * (1 + 1e-9)) {
            ++j;
            if (roots[j].abs_residual < best.abs_residual) best = roots[j];
        }
        EquilibriumPoint p;
        p.alpha = best.alpha;
        p.regime = best.alpha >= 1.0 ? Regime::full : Regime::partial;
        p.possible_merge = j > i;
        out.points.push_back(std::move(p));
        i = j + 1;
    }
    out.normalize();
    return out;
}

EquilibriumSet grid_equilibria(const MarketConfig& config, const BenefitFunction& benefit,
                               const ValuationDistribution& dist,
                               const SolverSettings& settings) {
    EquilibriumSet out = scan_residual(
        [&](double alpha) { return residual(config, benefit, dist, alpha); }, settings);
    for (auto& p : out.points) {
        const bool merged = p.possible_merge;
        p = make_point(config, p.alpha);
        p.possible_merge = merged;
    }
    return out;
}

double refine_root(const ResidualFn& f, double lo, double hi, double refine_tolerance) {
    if (!(lo > 0.0) || !(lo < hi) || !(hi <= 1.0)) {
        throw std::invalid_argument("bracket must satisfy 0 < lo < hi <= 1");
    }
    if (!(refine_tolerance > 0.0)) throw std::invalid_argument("refine_tolerance must be positive");
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw std::invalid_argument("residual does not change sign on the bracket");
    }
    return bisect(f, lo, hi, flo, fhi, refine_tolerance).alpha;
}

double refine_root(const MarketConfig& config, const BenefitFunction& benefit,
                   const ValuationDistribution& dist, double lo, double hi,
                   double refine_tolerance) {
    return refine_root([&](double alpha) { return residual(config, benefit, dist, alpha); }, lo,
                       hi, refine_tolerance);
}

std::vector<double> draw_valuations(const ValuationDistribution& dist, std::size_t n,
                                    std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist.quantile(unit(gen));
    return v;
}

EquilibriumSet empirical_oracle(const MarketConfig& config, const BenefitFunction& benefit,
                                const ValuationDistribution& dist, std::size_t n,
                                std::uint64_t seed, const SolverSettings& settings) {
    if (n == 0) throw std::invalid_argument("oracle needs at least one agent");
    const auto sample = ValuationDistribution::empirical(draw_valuations(dist, n, seed));
    EquilibriumSet out = grid_equilibria(config, benefit, sample, settings);
    out.source = Source::oracle;
    return out;
}

SweepResult sweep(const MarketConfig& config_template, const BenefitFunction& benefit,
                  const ValuationDistribution& dist, const std::vector<double>& prices,
                  const SolverSettings& settings, bool analytic_cross_check) {
    settings.validate();
    for (std::size_t i = 1; i < prices.size(); ++i) {
        if (!(prices[i] > prices[i - 1])) {
            throw std::invalid_argument("sweep prices must be strictly increasing");
        }
    }

    SweepResult result;
    result.rows.resize(prices.size());
    std::vector<std::exception_ptr> errors(prices.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < prices.size(); i = next++) {
            try {
                const MarketConfig config = config_template.with_price(prices[i]);
                SweepRow& row = result.rows[i];
                row.price = prices[i];
                row.equilibria = grid_equilibria(config, benefit, dist, settings);
                if (analytic_cross_check) row.analytic = solve_closed_form(config, benefit, dist);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, prices.size() + 1);
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return result;
}

}  // namespace endopriv
