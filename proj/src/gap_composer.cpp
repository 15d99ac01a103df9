#include "gapcert/gap_composer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gapcert/coderanged.hpp"
#include "gapcert/derangement_poly.hpp"
#include "gapcert/format.hpp"
#include "gapcert/three_site.hpp"

namespace gapcert {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_lambda(double lambda, const char *who) {
    if (!(lambda >= 0.0 && lambda <= 0.5)) {
        throw std::invalid_argument(std::string(who) + ": requires 0 <= lambda <= 1/2, got " + format_double(lambda));
    }
}

// Entries of the block matrix, generated row by row without storing it.
struct BlockMatrix {
    int n;
    double lambda, mu;
    bool special;
    double lambda1 = 0.0, mu1 = 0.0;

    BlockMatrix(int order, double l, std::optional<double> l1) : n(order), lambda(l), mu(mu_from_lambda(l)), special(l1) {
        if (l1) {
            lambda1 = *l1;
            mu1 = mu_from_lambda(*l1);
        }
    }

    // Fill row i for columns j >= from (from >= i - 1).
    void row(int i, int from, std::vector<double> &out) const {
        out.assign(n - from, 0.0);
        for (int j = from; j < n; ++j) {
            double v = 0.0;
            if (j == i - 1) {
                v = (special && i == 1) ? mu1 : mu;
            } else if (j == i) {
                v = (special && i == 0) ? lambda1 : lambda;
            } else if (j > i) {
                v = (j == i + 1) ? lambda * mu : out[j - 1 - from] * mu;
                if (special && i == 0 && j == 1) {
                    v = lambda;
                }
            }
            out[j - from] = v;
        }
        if (special && i == 0) {
            for (int j = std::max(from, 1); j < n; ++j) {
                out[j - from] *= mu1;
            }
        }
    }

    void apply(const std::vector<double> &x, std::vector<double> &y) const {
        std::vector<double> s(n + 1, 0.0);
        for (int i = n - 1; i >= 0; --i) {
            s[i] = x[i] + mu * s[i + 1];
        }
        y.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            y[i] = lambda * s[i] + (i > 0 ? mu * x[i - 1] : 0.0);
        }
        if (special) {
            y[0] = lambda1 * x[0] + mu1 * lambda * s[1];
            if (n > 1) {
                y[1] = lambda * s[1] + mu1 * x[0];
            }
        }
    }

    // True iff every pivot of s I - A (Gaussian elimination, no pivoting) is positive.
    // Past the diagonal each eliminated row stays geometric with ratio mu, -c mu^{j-k}, so
    // elimination reduces to the scalar recurrence c_{k+1} = lambda + c_k mu^2 / p_k, p_k = s - c_k.
    bool dominates(double s) const {
        double c = special ? lambda1 : lambda;
        double carry = special ? lambda * mu1 * mu1 : lambda * mu * mu;
        for (int k = 0; k < n; ++k) {
            double p = s - c;
            if (!(p > 0.0)) {
                return false;
            }
            if (k > 0) {
                carry = c * mu * mu;
            }
            c = lambda + carry / p;
        }
        return true;
    }
};

}  // namespace

double mu_from_lambda(double lambda) {
    check_lambda(lambda, "mu_from_lambda");
    return std::sqrt(lambda * (1.0 - lambda));
}

Eigen::MatrixXd build_A(int n, double lambda, std::optional<double> lambda_first) {
    if (n < 1) {
        throw std::invalid_argument("build_A: order must be positive");
    }
    check_lambda(lambda, "build_A");
    if (lambda_first) {
        check_lambda(*lambda_first, "build_A");
    }
    BlockMatrix block(n, lambda, lambda_first);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> r;
    for (int i = 0; i < n; ++i) {
        int from = std::max(i - 1, 0);
        block.row(i, from, r);
        for (int j = from; j < n; ++j) {
            a(i, j) = r[j - from];
        }
    }
    return a;
}

double gershgorin_bound(double lambda) {
    check_lambda(lambda, "gershgorin_bound");
    double s = 1.0 + std::sqrt(1.0 - lambda);
    return s * s * lambda;
}

double gershgorin_threshold() {
    double lo = 0.2;
    double hi = 0.4;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (gershgorin_bound(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

DominantEigenvalue dominant_eig_A(int n, double lambda, std::optional<double> lambda_first) {
    if (n < 1) {
        throw std::invalid_argument("dominant_eig_A: order must be positive");
    }
    check_lambda(lambda, "dominant_eig_A");
    if (lambda_first) {
        check_lambda(*lambda_first, "dominant_eig_A");
    }
    DominantEigenvalue out;
    BlockMatrix block(n, lambda, lambda_first);
    if (lambda == 0.0 && (!lambda_first || *lambda_first == 0.0)) {
        return out;
    }

    // Collatz-Wielandt bracket from a short power iteration.
    std::vector<double> x(n, 1.0);
    std::vector<double> y;
    double lower = 0.0;
    double upper = 0.0;
    const int max_power = 2000;
    for (int it = 0; it < max_power; ++it) {
        block.apply(x, y);
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double peak = 0.0;
        bool positive = true;
        for (int i = 0; i < n; ++i) {
            if (x[i] > 0.0) {
                double r = y[i] / x[i];
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            } else {
                positive = false;
            }
            peak = std::max(peak, y[i]);
        }
        lower = positive ? std::max(lower, lo) : lower;
        upper = (it == 0) ? hi : std::min(upper, hi);
        out.power_iterations = it + 1;
        if (peak <= 0.0) {
            break;
        }
        for (int i = 0; i < n; ++i) {
            x[i] = y[i] / peak;
        }
        if (positive && upper - lower <= 1e-15 * upper) {
            break;
        }
    }

    double hi = upper * (1.0 + 1e-12) + 1e-300;
    if (!block.dominates(hi)) {
        block.apply(std::vector<double>(n, 1.0), y);
        double row_max = *std::max_element(y.begin(), y.end());
        hi = row_max * (1.0 + 1e-12) + 1e-300;
        if (!block.dominates(hi)) {
            throw std::runtime_error("dominant_eig_A: row-sum bound failed the M-matrix test");
        }
    }
    double lo = lower;
    if (block.dominates(lo)) {
        lo = 0.0;
    }
    for (int step = 0; step < 200 && hi - lo > 1e-15 * hi; ++step) {
        double mid = 0.5 * (lo + hi);
        if (block.dominates(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        out.bisection_steps = step + 1;
    }
    out.lower = lo;
    out.upper = hi;
    out.value = hi;
    return out;
}

double special_bound(double lambda, double lambda_first) {
    if (!(lambda >= kSpecialBoundMinimum)) {
        throw std::invalid_argument("special_bound: requires lambda >= 0.06963, got " + format_double(lambda));
    }
    if (!(lambda <= lambda_first)) {
        throw std::invalid_argument("special_bound: requires lambda <= lambda_first");
    }
    if (!(lambda_first <= 0.5)) {
        throw std::invalid_argument("special_bound: requires lambda_first <= 1/2, got " + format_double(lambda_first));
    }
    double s = 1.0 + std::sqrt(1.0 - lambda);
    double second = lambda_first + s * std::sqrt((1.0 - lambda_first) * lambda * lambda_first);
    return std::max(s * s * lambda, second);
}

StaircaseBound staircase_sev_bound(double lambda_sup) {
    check_lambda(lambda_sup, "staircase_sev_bound");
    StaircaseBound out;
    out.value = gershgorin_bound(lambda_sup);
    out.nontrivial = out.value < 1.0;
    return out;
}

double gap_lower_closed_form(int q) {
    if (q < 2) {
        throw std::invalid_argument("gap_lower_closed_form: requires q >= 2");
    }
    double qd = q;
    double r = 2.0 * qd / (qd * qd + 1.0) * (1.0 + std::sqrt(1.0 + 1.0 / (qd * qd))) / 2.0;
    return 1.0 - r * r;
}

double gap_upper(int q, SiteCount N) {
    if (q < 2) {
        throw std::invalid_argument("gap_upper: requires q >= 2");
    }
    if (N && *N < 2) {
        throw std::invalid_argument("gap_upper: requires N >= 2");
    }
    double qd = q;
    double c = N ? std::cos(kPi / static_cast<double>(*N)) : 1.0;
    double r = 2.0 * qd / (qd * qd + 1.0) * c;
    return 1.0 - r * r;
}

GapBounds gap_bounds(int q, SiteCount N) {
    return {gap_lower_closed_form(q), gap_upper(q, N)};
}

DepthBounds design_depth(long N, int q, int t, double epsilon, double lambda_stair) {
    if (!(lambda_stair > 0.0 && lambda_stair < 1.0)) {
        throw std::invalid_argument("design_depth: requires 0 < lambda_stair < 1, got " + format_double(lambda_stair));
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("design_depth: requires 0 < epsilon < 1");
    }
    if (N < 1 || q < 2 || t < 1) {
        throw std::invalid_argument("design_depth: requires N >= 1, q >= 2, t >= 1");
    }
    double inv_log = 1.0 / std::log(1.0 / lambda_stair);
    double work = 2.0 * static_cast<double>(N) * t * std::log(static_cast<double>(q)) + std::log(1.0 / epsilon);
    DepthBounds out;
    out.constant = 2.0 * inv_log;
    out.additive = 1.0 + out.constant * work;
    out.additive_layers = static_cast<long>(std::ceil(out.additive));
    out.multiplicative_layers = 2 * static_cast<long>(std::ceil(0.5 * inv_log * work));
    return out;
}

double depth_constant_closed_form(int q) {
    double qd = q;
    return 1.0 / (std::log((qd * qd + 1.0) / (2.0 * qd)) + std::log(2.0 / (1.0 + std::sqrt(1.0 + 1.0 / (qd * qd)))));
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::exact:
            return "exact";
        case Provenance::table:
            return "table";
        case Provenance::numerical:
            return "numerical";
        case Provenance::analytic:
            return "analytic";
    }
    return "unknown";
}

UniformBound uniform_k_bound(int k, int q) {
    if (k < 2 || k > q) {
        throw std::invalid_argument("uniform_k_bound: requires 2 <= k <= q");
    }
    double qd = q;
    double q2 = qd * qd;
    double ratio = k / qd;
    UniformBound out;
    if (k == 2) {
        out.value = 1.0 / (q2 + 1.0);
        out.provenance = Provenance::analytic;
        out.source = "t=2 closed form supremum over m";
    } else if (k <= 6) {
        out.value = kMajorantKCoefficient[k - 3] / q2 * std::pow(ratio, kMajorantKExponent[k - 3]);
        out.provenance = Provenance::table;
        out.source = "half-operator majorant coefficients";
    } else if (k <= 28) {
        out.value = k_bound_from_dt(k, q, DtRegime::numerical);
        out.provenance = Provenance::numerical;
        out.source = "derangement polynomial numerical constant";
    } else {
        out.value = k_bound_from_dt(k, q, DtRegime::analytic);
        out.provenance = Provenance::analytic;
        out.source = "derangement polynomial analytic bound";
    }
    return out;
}

GapCertificate certify(SiteCount N, int q, int t, double epsilon, const CertifyOptions &options) {
    GapCertificate cert;
    cert.N = N;
    cert.q = q;
    cert.t = t;
    cert.epsilon = epsilon;
    cert.lambdas.q = q;
    cert.lambdas.t = t;
    if (q < 2 || t < 2) {
        throw std::invalid_argument("certify: requires q >= 2 and t >= 2");
    }
    if (N && *N < 3) {
        throw std::invalid_argument("certify: requires N >= 3");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("certify: requires 0 < epsilon < 1");
    }

    // Per-m values are only needed for m <= N - 2.
    int m_cap = N ? static_cast<int>(std::min<long>(*N - 2, 1L << 20)) : std::numeric_limits<int>::max();

    if (t <= q) {
        int m_last = std::min(options.m_max, m_cap);
        if (t <= 6) {
            for (int m = 1; m <= m_last; ++m) {
                SubleadingBound b = km_subleading_bound(m, q, t);
                cert.lambdas.entries.push_back({m, b.bound, Provenance::exact});
            }
            cert.method_trail.push_back("three_site: deranged-block norms for m = 1.." + std::to_string(m_last));
        }
        double tail = 0.0;
        Provenance tail_prov = Provenance::analytic;
        for (int k = 2; k <= t; ++k) {
            UniformBound u = uniform_k_bound(k, q);
            if (u.value > tail) {
                tail = u.value;
                tail_prov = u.provenance;
            }
            if (k <= 3 || k == 7 || k == 29) {
                cert.method_trail.push_back("uniform tail k=" + std::to_string(k) + (k == 3 ? "..6" : "") +
                                            (k == 7 ? "..28" : "") + (k == 29 ? "+" : "") + ": " + u.source);
            }
        }
        cert.lambdas.tail = tail;
        cert.lambdas.tail_provenance = tail_prov;
        double sup = tail;
        for (const auto &e : cert.lambdas.entries) {
            sup = std::max(sup, e.value);
        }
        cert.lambda_sup = sup;
        if (sup > 0.5) {
            cert.reason = "lambda_sup exceeds 1/2";
            return cert;
        }
        if (N) {
            DominantEigenvalue d = dominant_eig_A(static_cast<int>(*N - 1), sup);
            cert.sev_bound = d.value;
            cert.composition = "block_matrix_perron_root";
            cert.method_trail.push_back("finite-N block matrix A of order N-1, Perron root by M-matrix bisection");
        } else {
            cert.sev_bound = staircase_sev_bound(sup).value;
            cert.composition = "gershgorin";
            cert.method_trail.push_back("Gershgorin composition (1 + sqrt(1 - lambda))^2 lambda");
        }
    } else if (q == 2 && t <= 6) {
        int m_last = std::min(options.coderanged_m_max, m_cap);
        double later = 0.2;
        for (int m = 1; m <= m_last; ++m) {
            double value = t2_eigenvalue(m, q).get_d();
            for (int k = 3; k <= t; ++k) {
                CoderangedValue c = coderanged_eigenvalue(m, q, k);
                if (!c.trivial) {
                    value = std::max(value, c.eigenvalue);
                }
            }
            cert.lambdas.entries.push_back({m, value, Provenance::numerical});
            if (m == 1) {
                cert.lambda_first = value;
            } else {
                later = std::max(later, value);
            }
        }
        cert.method_trail.push_back("coderanged: intersection-space Lanczos for k = 3.." + std::to_string(t) +
                                    ", m = 1.." + std::to_string(m_last));
        cert.method_trail.push_back("t=2 closed form for the k=2 block");
        if (!N || *N - 2 > m_last) {
            cert.notes.push_back("per-m values beyond m = " + std::to_string(m_last) +
                                 " are taken as 1/5, extrapolating the computed range");
        }
        cert.lambdas.tail = later;
        cert.lambdas.tail_provenance = Provenance::numerical;
        cert.lambda_sup = later;
        if (cert.lambda_first && *cert.lambda_first > later) {
            if (N) {
                cert.sev_bound = dominant_eig_A(static_cast<int>(*N - 1), later, cert.lambda_first).value;
                cert.composition = "block_matrix_perron_root_special";
                cert.method_trail.push_back("finite-N block matrix A' with exceptional first block");
            } else {
                cert.sev_bound = special_bound(later, *cert.lambda_first);
                cert.composition = "special";
                cert.method_trail.push_back("exceptional-first-block composition");
            }
        } else {
            cert.lambda_sup = std::max(later, cert.lambda_first.value_or(0.0));
            if (N) {
                cert.sev_bound = dominant_eig_A(static_cast<int>(*N - 1), cert.lambda_sup).value;
                cert.composition = "block_matrix_perron_root";
                cert.method_trail.push_back("finite-N block matrix A of order N-1, Perron root by M-matrix bisection");
            } else {
                cert.sev_bound = staircase_sev_bound(cert.lambda_sup).value;
                cert.composition = "gershgorin";
                cert.method_trail.push_back("Gershgorin composition (1 + sqrt(1 - lambda))^2 lambda");
            }
        }
    } else {
        cert.reason = "no certificate: t > q is covered only for q = 2 and t <= 6";
        return cert;
    }

    cert.gap_lower = 1.0 - cert.sev_bound;
    cert.gap_upper = gap_upper(q, N);
    cert.method_trail.push_back("gap upper bound 1 - (2q/(q^2+1) cos(pi/N))^2");
    if (cert.sev_bound >= 1.0) {
        cert.reason = "composed bound is trivial (>= 1)";
        return cert;
    }
    if (N) {
        cert.depth = design_depth(*N, q, t, epsilon, cert.sev_bound);
        cert.method_trail.push_back("depth from subleading eigenvalue: 1 + C (2 N t log q + log(1/epsilon))");
        if (*N == 100 && q == 4 && t == 4) {
            cert.notes.push_back("headline figure for this instance is 3030 layers; the depth formula gives " +
                                 format_double(cert.depth->additive) + ", a factor of about 2 smaller");
        }
    }
    cert.valid = true;
    return cert;
}

}  // namespace gapcert
