#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnmetric/sequence.hpp"
#include "pnmetric/space.hpp"

namespace pnmetric {

// A tabulated total self-map of a space's point set.
class SelfMap {
public:
    static SelfMap build(const PartialNMetricSpace& space,
                         const std::map<std::string, std::string>& mapping);
    static SelfMap from_indices(const PartialNMetricSpace& space, std::vector<int> image);
    static SelfMap identity(const PartialNMetricSpace& space);

    const PartialNMetricSpace& space() const { return *space_; }
    int apply(int x) const { return image_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& image() const { return image_; }

private:
    const PartialNMetricSpace* space_ = nullptr;
    std::vector<int> image_;
};

// The orbit x0, fx0, f^2 x0, ... On a finite space every orbit is
// eventually periodic; cycle detection is exact.
struct OrbitTrace {
    int start = 0;
    std::vector<int> terms;        // up to cycle entry + one full cycle (or max_steps)
    int cycle_entry = -1;          // -1 when max_steps hit before the cycle closed
    int cycle_length = 0;
    std::vector<double> step_values;  // G(<f^m x0>^{n-1}, f^{m+1} x0) per step

    bool cycle_found() const { return cycle_entry >= 0; }
    std::vector<int> cycle_points() const;
    SequencePrefix prefix(const PartialNMetricSpace& space, int min_length) const;
};

OrbitTrace orbit(const SelfMap& map, int x0, int max_steps = 1 << 20);

struct NonExpansiveResult {
    bool holds = true;
    MultisetKey witness;  // first violating multiset in enumeration order
    double lhs = 0.0;     // G of the image multiset
    double rhs = 0.0;     // G of the original multiset
};

// Exhaustive over all size-n multisets; symmetry makes tuples redundant.
NonExpansiveResult check_nonexpansive(const PartialNMetricSpace& space, const SelfMap& map,
                                      double tol = 1e-9);

struct OrbitalContinuityVerdict {
    bool holds = true;        // vacuously true when the antecedent fails
    bool antecedent = false;  // z is a limit of the orbit
    bool consequent = false;  // fz is a limit of the orbit
};

// Definition of orbital continuity at x0 for one designated z, evaluated on
// the orbit's cycle (exact on finite spaces).
OrbitalContinuityVerdict check_orbital_continuity(const SelfMap& map, int x0, int z,
                                                  double tol = 1e-9);

// Universal variant: at x0 for every z in the space.
OrbitalContinuityVerdict check_orbital_continuity_all(const SelfMap& map, int x0,
                                                      double tol = 1e-9);

enum class CertificateKind { r_contractive, phi_r_contractive };

struct ContractivityCertificate {
    CertificateKind kind = CertificateKind::r_contractive;
    double r = 0.0;
    double c_estimate = 0.0;  // decay rate for r-contractive, lambda for phi
    int prefix_length = 0;
    bool holds_on_prefix = false;
    std::string failure_witness;
};

// Definition of orbital r-contractivity checked on a cycle-exhaustive orbit
// prefix (exact for finite spaces). prefix_len is extended automatically to
// cover entry-to-cycle plus one full cycle.
ContractivityCertificate certify_r_contractive(const SelfMap& map, int x0, double r,
                                               int prefix_len = 2, double tol = 1e-9);

// phi-contractivity with the linear family phi(t) = lambda (t - r),
// 0 < lambda <= 1.
ContractivityCertificate certify_phi_contractive(const SelfMap& map, int x0, double r,
                                                 double lambda, int prefix_len = 2,
                                                 double tol = 1e-9);

struct OrbitalCompletenessResult {
    bool complete = true;
    std::vector<std::string> witnesses;  // starts whose Cauchy orbit has no special limit
};

OrbitalCompletenessResult check_orbital_completeness(const PartialNMetricSpace& space,
                                                     const SelfMap& map, double tol = 1e-9);

enum class SolveStatus { fixed_point, not_cauchy, no_special_limit, hypotheses_unsatisfied };

std::string solve_status_name(SolveStatus s);

struct CaseEvaluation {
    std::string name;
    bool satisfied = false;
    std::string detail;
};

struct FixedPointResult {
    SolveStatus status = SolveStatus::hypotheses_unsatisfied;
    std::optional<int> fixed_point;
    double self_distance_at_fp = 0.0;
    int iterations = 0;
    std::string theorem_case;                 // which hypothesis set fired
    std::vector<CaseEvaluation> case_log;     // every case evaluated, in order
    std::optional<ContractivityCertificate> certificate;
    std::optional<std::string> corollary_case;  // set by solve_via_contractive
    std::string diagnostic;                   // reason when no fixed point is claimed
};

struct SolveConfig {
    int max_steps = 0;  // 0: 10 * |points|
    double tol = 1e-9;
    bool strong_mode = false;
};

// The Cauchy Mapping Theorems as an engine: generate the orbit, certify the
// exact Cauchy verdict and special limit, then verify a hypothesis set. The
// first satisfied case is reported; all evaluations are logged. Throws
// TheoremContradicted if hypotheses verify but map(a) != a, which cannot
// happen on a validated space.
FixedPointResult solve_fixed_point(const PartialNMetricSpace& space, const SelfMap& map,
                                   int x0, const SolveConfig& config = {});

struct CertificateRequest {
    CertificateKind kind = CertificateKind::r_contractive;
    double r = 0.0;
    double lambda = 0.5;  // phi only
};

struct ContractiveSolveResult {
    bool certificate_failed = false;
    ContractivityCertificate certificate;
    FixedPointResult result;
};

// Corollary path: obtain the requested certificate on the cycle-exhaustive
// prefix, then solve; when a corollary hypothesis set holds, additionally
// asserts |self_distance(a) - r| <= tol.
ContractiveSolveResult solve_via_contractive(const PartialNMetricSpace& space,
                                             const SelfMap& map, int x0,
                                             const CertificateRequest& request,
                                             const SolveConfig& config = {});

}  // namespace pnmetric
