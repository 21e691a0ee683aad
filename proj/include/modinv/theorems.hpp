#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modinv/depth.hpp"
#include "modinv/matrix_group.hpp"

namespace modinv {

enum class VerdictStatus { pass, fail, vacuous, hypothesis_not_satisfied };
const char* to_string(VerdictStatus s);

/// Outcome of one bounded theorem check. Fail verdicts carry witnesses; every verdict lists the
/// cutoffs its claim depends on.
struct TheoremVerdict {
    std::string theorem;
    std::string instance;
    VerdictStatus status = VerdictStatus::pass;
    std::vector<std::pair<std::string, std::int64_t>> quantities;
    std::vector<std::string> witnesses;
    std::vector<std::pair<std::string, int>> cutoffs;
    std::string note;

    bool ok() const { return status != VerdictStatus::fail; }
};

/// "p=2 n=2 gens=[[0,1],[1,0]]".
std::string describe_instance(const GroupPtr& g);

/// depth(F[V]^G) >= dim V^P.
TheoremVerdict duflot_bound_check(const GroupPtr& g, const DepthReport& depth);
TheoremVerdict duflot_bound_check(const GroupPtr& g, int cutoff, const DepthOptions& options = {});

/// If the restrictions of seq to C are regular in F[C], seq is regular in F[V]^G.
TheoremVerdict duflot_lifting_check(const GroupPtr& g, const Subspace& c, const std::vector<Polynomial>& seq,
                                    int cutoff, std::size_t piece_cap = kDefaultPieceCap);
/// Same, reusing an invariant ring computed through the cutoff.
TheoremVerdict duflot_lifting_check(const InvariantRing& ring, const Subspace& c, const std::vector<Polynomial>& seq,
                                    int cutoff);

/// depth(F[V]^G) >= min(dim V^P + 2, n), reporting whether equality holds.
TheoremVerdict es_comparison(const GroupPtr& g, const DepthReport& depth);
TheoremVerdict es_comparison(const GroupPtr& g, int cutoff, const DepthOptions& options = {});

/// F[V]^G sits inside F[V]^{G_U} degreewise and its Hilbert coefficients are dominated.
TheoremVerdict stabilizer_component_check(const GroupPtr& g, const Subspace& u, int cutoff,
                                          std::size_t piece_cap = kDefaultPieceCap);

inline constexpr std::size_t kDefaultCarlsonSubspaceCap = 200;

/// Kernel of F[V]^G -> prod_{dim U = s} F[V]^{G_U}, degreewise up to the cutoff.
/// Pass `depth` to have the depth >= s hypothesis reported alongside.
TheoremVerdict carlson_detection_check(const GroupPtr& g, std::size_t s, int cutoff,
                                       std::optional<int> depth = std::nullopt,
                                       std::size_t subspace_cap = kDefaultCarlsonSubspaceCap,
                                       std::size_t piece_cap = kDefaultPieceCap);

}  // namespace modinv
