#pragma once

// Prefix metric, the per-(k, n) neighbourhood test and bounded continuity
// probing for functions realized by Büchi transducers.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "omega/pcp.hpp"
#include "omega/transducer.hpp"

namespace omega {

/// Length of the longest common prefix; empty optional when u and v denote
/// the same infinite word.
std::optional<std::size_t> prefix_distance_exponent(const LassoWord& u, const LassoWord& v);

/// Words sharing the first k+1 letters with the center.
struct BallPrefix {
  LassoWord center;
  std::size_t radius_exponent;

  Word prefix() const { return center.take(radius_exponent + 1); }
};

/// True iff x ∈ Dom and every point of Dom sharing the first k+1 letters
/// with x has an image sharing the first n+1 letters with F(x).
bool xkn_test(const BuchiTransducer& t, const LassoWord& x, std::size_t k, std::size_t n);

/// Image prefixes of length m over the ball of radius exponent k around x.
std::set<Word> ball_image_prefixes(const BuchiTransducer& t, const LassoWord& x, std::size_t k, std::size_t m);

struct DiscontinuityWitness {
  std::size_t k;
  LassoWord point;     // shares the first k+1 letters with x
  std::size_t l_pref;  // common prefix length of F(x) and F(point)
};

/// Produces, for a given k, a domain point close to x whose image is far
/// from F(x). Throws NoWitness when it has none to offer.
using WitnessGenerator = std::function<DiscontinuityWitness(const LassoWord& x, std::size_t k)>;

enum class VerdictKind { ContinuousUpTo, DiscontinuityEvidence, Unknown };

const char* verdict_name(VerdictKind k);

struct ContinuityVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  /// ContinuousUpTo: largest certified n. Otherwise: the failing n.
  std::size_t depth_n = 0;
  std::size_t k_max = 0;
  /// n -> least k for which the neighbourhood test succeeded.
  std::map<std::size_t, std::size_t> evidence;
  std::vector<DiscontinuityWitness> witnesses;
};

/// Sweeps n = 1..N, searching k = 1..k_max for a successful neighbourhood
/// test. When a generator is given it is consulted first; witnesses for every
/// k = 1..k_max at a common depth yield DiscontinuityEvidence.
ContinuityVerdict continuity_probe(const BuchiTransducer& t, const LassoWord& x, std::size_t N, std::size_t k_max,
                                   const WitnessGenerator& generator = {});

/// Density witness for the F and F' constructions: keeps the first k+1
/// letters of x and the index projection, and moves the a/b tail to the other
/// branch (all b if x has infinitely many a, (ab)^ω otherwise). Requires the
/// input alphabet to contain symbols named a and b.
DiscontinuityWitness branch_flip_witness(const BuchiTransducer& t, const LassoWord& x, std::size_t k);

WitnessGenerator branch_flip_generator(const BuchiTransducer& t);

/// Index projection of an input of the F construction.
LassoWord index_projection(const BuchiTransducer& t_f, const LassoWord& x);

/// Witness for pcp_to_function_F(I). Throws NoWitness when the index
/// projection of x solves I.
DiscontinuityWitness f_discontinuity_witness(const PcpRegInstance& instance, const BuchiTransducer& t_f,
                                             const LassoWord& x, std::size_t k);

}  // namespace omega
