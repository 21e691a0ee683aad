#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modinv/invariants.hpp"

namespace modinv {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

enum class CertificateMethod { degreewise, freeness, polynomial_ring };
const char* to_string(CertificateMethod m);

struct RegularSequenceCertificate {
    std::vector<Polynomial> sequence;
    /// Every multiplication map was checked into target degrees <= verified_up_to.
    int verified_up_to = 0;
    CertificateMethod method = CertificateMethod::degreewise;
};

/// r is nonzero modulo (y_1..y_{i-1}) but y_i r lies in that ideal.
struct ZerodivisorWitness {
    std::size_t position;  // i - 1
    Polynomial element;
    int degree;  // degree of y_i r
};

struct RegularSequenceResult {
    bool regular = false;
    /// The longest certified prefix; the whole sequence when `regular`.
    RegularSequenceCertificate certificate;
    std::optional<ZerodivisorWitness> witness;
};

/// Whether seq is regular in F_p[t_1..t_r]: dim F[t]/(seq) == r - k, decided with a Groebner basis.
bool regular_in_polynomial_ring(const std::vector<Polynomial>& seq, std::size_t r);

/// Checks y_1..y_k degreewise on the invariant ring: multiplication by y_i on R/(y_1..y_{i-1})
/// must be injective into every target degree <= cutoff.
RegularSequenceResult module_regular_sequence_check(const InvariantRing& m, const std::vector<Polynomial>& seq,
                                                    int cutoff);

struct FreenessResult {
    /// H_M * prod(1 - t^deg y_i) == H_{M/(y)M} through degree `cutoff`.
    bool free = false;
    /// Quotient coefficients vanish on the last max(deg y_i) degrees up to the cutoff.
    /// Reported separately; a non-parameter sequence can be free without it.
    bool window_vanishes = false;
    std::optional<int> first_mismatch;
    HilbertCoefficients module_series;
    HilbertCoefficients quotient_series;
    HilbertCoefficients expected_quotient;
};

FreenessResult freeness_test(const InvariantRing& m, const std::vector<Polynomial>& seq, int cutoff);

struct KoszulProfile {
    std::vector<Polynomial> hsop;
    int cutoff = 0;
    /// Internal degrees examined: cutoff + sum of the hsop degrees.
    int internal_bound = 0;
    int top_nonvanishing = 0;
    /// Nonzero homology dimensions, keyed by (homological index, internal degree).
    std::map<std::pair<int, int>, std::int64_t> homology;

    int depth_claim() const { return static_cast<int>(hsop.size()) - top_nonvanishing; }
};

/// Koszul complex of an hsop over R/(quotient_by)R, with ranks cached per multidegree so that
/// profiles at increasing cutoffs share work.
class KoszulComplex {
public:
    KoszulComplex(const InvariantRing& ring, std::vector<Polynomial> hsop, std::vector<Polynomial> quotient_by = {});
    ~KoszulComplex();
    KoszulComplex(const KoszulComplex&) = delete;
    KoszulComplex& operator=(const KoszulComplex&) = delete;

    int degree_sum() const;
    KoszulProfile profile(int cutoff);

private:
    struct State;
    std::unique_ptr<State> state_;
};

KoszulProfile koszul_depth(const InvariantRing& m, const std::vector<Polynomial>& hsop, int cutoff,
                           const std::vector<Polynomial>& quotient_by = {});

/// Homogeneous system of parameters found by greedy search over low-degree invariants
/// (multihomogeneous for the ring's grading when possible), else the Dickson invariants.
struct HsopChoice {
    std::vector<Polynomial> elements;
    std::string source;  // "search" or "dickson"
};
HsopChoice find_hsop(InvariantRing& ring, int search_degree);

struct DepthOptions {
    std::uint64_t seed = kDefaultSeed;
    /// Random candidates tried per position once the hsop elements are used up.
    int random_attempts = 24;
    std::size_t piece_cap = kDefaultPieceCap;
};

struct DepthReport {
    int depth = 0;
    RegularSequenceCertificate certificate;
    KoszulProfile koszul;
    KoszulProfile koszul_rerun;
    FreenessResult freeness;
    bool agreement = false;
    std::string hsop_source;
    std::uint64_t seed = kDefaultSeed;
};

/// Depth by Koszul homology over an hsop (re-run at cutoff + 2) cross-checked against a searched
/// maximal regular sequence. Throws InconsistencyError when the methods disagree.
DepthReport depth_report(const GroupPtr& g, int cutoff, const DepthOptions& options = {});
/// Same, extending an existing (possibly cached) ring of the group.
DepthReport depth_report(InvariantRing& ring, int cutoff, const DepthOptions& options = {});

/// Cutoff used when none is given: top minimal-generator degree (within the Symonds bound)
/// plus the hsop degree sum.
int default_cutoff(const GroupPtr& g, std::size_t piece_cap = kDefaultPieceCap);

}  // namespace modinv
