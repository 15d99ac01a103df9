#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace gapcert {

// Number of sites; nullopt stands for the N -> infinity limit.
using SiteCount = std::optional<long>;

double mu_from_lambda(double lambda);

// Matrix of block norms of order n: diagonal lambda, subdiagonal mu, entry lambda mu^{j-i} above.
// With lambda_first the first row and column follow the exceptional-first-block layout.
Eigen::MatrixXd build_A(int n, double lambda, std::optional<double> lambda_first = std::nullopt);

// (1 + sqrt(1 - lambda))^2 lambda
double gershgorin_bound(double lambda);
// Root of gershgorin_bound(lambda) = 1, about 0.2956.
double gershgorin_threshold();

struct DominantEigenvalue {
    double value = 0.0;  // certified upper end of the final bracket
    double lower = 0.0;
    double upper = 0.0;
    int power_iterations = 0;
    int bisection_steps = 0;
};

// Perron root of build_A(n, lambda, lambda_first), bracketed by Collatz-Wielandt bounds
// and refined by bisection on the M-matrix pivot test.
DominantEigenvalue dominant_eig_A(int n, double lambda, std::optional<double> lambda_first = std::nullopt);

inline constexpr double kSpecialBoundMinimum = 0.06963;

// max((1 + sqrt(1-lambda))^2 lambda, lambda1 + (1 + sqrt(1-lambda)) sqrt((1-lambda1) lambda lambda1))
double special_bound(double lambda, double lambda_first);

struct StaircaseBound {
    double value = 0.0;
    bool nontrivial = false;
};

StaircaseBound staircase_sev_bound(double lambda_sup);

struct GapBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Lower: 1 - (2q/(q^2+1) (1 + sqrt(1 + 1/q^2))/2)^2. Upper: 1 - (2q/(q^2+1) cos(pi/N))^2.
GapBounds gap_bounds(int q, SiteCount N);
double gap_lower_closed_form(int q);
double gap_upper(int q, SiteCount N);

struct DepthBounds {
    double additive = 0.0;
    long additive_layers = 0;
    long multiplicative_layers = 0;
    double constant = 0.0;  // 2 / log(1/lambda_stair)
};

DepthBounds design_depth(long N, int q, int t, double epsilon, double lambda_stair);
// [log((q^2+1)/(2q)) + log(2/(1 + sqrt(1 + 1/q^2)))]^{-1}
double depth_constant_closed_form(int q);

enum class Provenance { exact, table, numerical, analytic };
std::string provenance_name(Provenance p);

struct LambdaEntry {
    int m = 0;
    double value = 0.0;
    Provenance provenance = Provenance::exact;
};

struct LambdaTable {
    int q = 0;
    int t = 0;
    std::vector<LambdaEntry> entries;
    double tail = 0.0;
    Provenance tail_provenance = Provenance::analytic;
};

struct CertifyOptions {
    int m_max = 64;
    int coderanged_m_max = 20;
};

struct GapCertificate {
    bool valid = false;
    std::string reason;
    SiteCount N;
    int q = 0;
    int t = 0;
    double epsilon = 0.0;
    LambdaTable lambdas;
    double lambda_sup = 0.0;
    std::optional<double> lambda_first;
    std::string composition;
    double sev_bound = 0.0;
    double gap_lower = 0.0;
    double gap_upper = 0.0;
    std::optional<DepthBounds> depth;
    std::vector<std::string> method_trail;
    std::vector<std::string> notes;
};

GapCertificate certify(SiteCount N, int q, int t, double epsilon, const CertifyOptions &options = {});

// t^2 Hbar^2 for t = 3..6, with Hbar the deranged-column majorant norm divided by
// f_t(t^-2), rounded up. The published constants 0.307, 0.167, 8.27e-3, 2.48e-3 omit the division.
inline constexpr double kMajorantKCoefficient[] = {0.3473, 0.1853, 9.101e-3, 2.703e-3};
inline constexpr int kMajorantKExponent[] = {2, 2, 4, 4};

// Uniform-in-m bound on the deranged block at moment k <= q, with its provenance.
struct UniformBound {
    double value = 0.0;
    Provenance provenance = Provenance::analytic;
    std::string source;
};
UniformBound uniform_k_bound(int k, int q);

}  // namespace gapcert
