#include "omega/continuity.hpp"

#include <algorithm>

namespace omega {

std::optional<std::size_t> prefix_distance_exponent(const LassoWord& u, const LassoWord& v) {
  if (lasso_equal(u, v)) return std::nullopt;
  for (std::size_t i = 0;; ++i) {
    if (u.at(i) != v.at(i)) return i;
  }
}

std::set<Word> ball_image_prefixes(const BuchiTransducer& t, const LassoWord& x, std::size_t k, std::size_t m) {
  return prefix_set(image_automaton(restrict_input_prefix(t, x.take(k + 1))), m);
}

bool xkn_test(const BuchiTransducer& t, const LassoWord& x, std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw InvalidArgument("k and n must be positive");
  check_lasso(t.input_alphabet(), x);
  if (!in_domain(t, x)) return false;
  const Word expected = apply_lasso(t, x).take(n + 1);
  const auto prefixes = ball_image_prefixes(t, x, k, n + 1);
  return prefixes.size() == 1 && *prefixes.begin() == expected;
}

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::ContinuousUpTo: return "ContinuousUpTo";
    case VerdictKind::DiscontinuityEvidence: return "DiscontinuityEvidence";
    default: return "Unknown";
  }
}

ContinuityVerdict continuity_probe(const BuchiTransducer& t, const LassoWord& x, std::size_t N, std::size_t k_max,
                                   const WitnessGenerator& generator) {
  if (N == 0 || k_max == 0) throw InvalidArgument("N and k_max must be positive");
  check_lasso(t.input_alphabet(), x);
  const LassoWord fx = apply_lasso(t, x);  // throws NotInDomain
  ContinuityVerdict verdict;
  verdict.k_max = k_max;

  if (generator) {
    std::vector<DiscontinuityWitness> found;
    try {
      for (std::size_t k = 1; k <= k_max; ++k) {
        DiscontinuityWitness w = generator(x, k);
        const auto close = prefix_distance_exponent(x, w.point);
        if (close && *close < k + 1) throw Error("internal: witness point outside the ball");
        const auto far = prefix_distance_exponent(fx, apply_lasso(t, w.point));
        if (!far || *far != w.l_pref) throw Error("internal: witness image distance mismatch");
        found.push_back(std::move(w));
      }
    } catch (const NoWitness&) {
      found.clear();
    } catch (const NotInDomain&) {
      found.clear();
    }
    const bool consistent = !found.empty() && std::all_of(found.begin(), found.end(), [&](const auto& w) {
      return w.l_pref == found.front().l_pref;
    });
    if (consistent) {
      verdict.kind = VerdictKind::DiscontinuityEvidence;
      verdict.depth_n = std::max<std::size_t>(1, found.front().l_pref);
      verdict.witnesses = std::move(found);
      return verdict;
    }
  }

  // X_{k,n+1} implies X_{k,n}, so the least k never decreases with n.
  std::size_t k_lo = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    bool certified = false;
    for (std::size_t k = k_lo; k <= k_max; ++k) {
      if (xkn_test(t, x, k, n)) {
        verdict.evidence[n] = k;
        k_lo = k;
        certified = true;
        break;
      }
    }
    if (!certified) {
      verdict.kind = VerdictKind::Unknown;
      verdict.depth_n = n;
      return verdict;
    }
  }
  verdict.kind = VerdictKind::ContinuousUpTo;
  verdict.depth_n = N;
  return verdict;
}

DiscontinuityWitness branch_flip_witness(const BuchiTransducer& t, const LassoWord& x, std::size_t k) {
  const auto a = t.input_alphabet().find("a");
  const auto b = t.input_alphabet().find("b");
  if (!a || !b) throw InvalidArgument("input alphabet lacks the branch letters a and b");
  check_lasso(t.input_alphabet(), x);
  const LassoWord fx = apply_lasso(t, x);
  const Word& u = x.prefix();
  const Word& v = x.loop();
  auto is_ab = [&](Symbol s) { return s == *a || s == *b; };
  const auto ab_count = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), is_ab));
  if (ab_count == 0) throw NoWitness("the loop has no branch letters");
  const bool many_a = std::find(v.begin(), v.end(), *a) != v.end();

  Word tail = v;
  if (many_a) {
    for (auto& s : tail) {
      if (is_ab(s)) s = *b;
    }
  } else {
    if (ab_count % 2 == 1) tail = concat(v, v);
    bool next_a = true;
    for (auto& s : tail) {
      if (!is_ab(s)) continue;
      s = next_a ? *a : *b;
      next_a = !next_a;
    }
  }
  Word prefix = u;
  while (prefix.size() < k + 1) prefix = concat(prefix, v);
  LassoWord y = lasso_normalize(prefix, tail);
  if (!in_domain(t, y)) throw NoWitness("flipped point is outside the domain");
  const auto l = prefix_distance_exponent(fx, apply_lasso(t, y));
  if (!l) throw NoWitness("both branches agree at this point");
  return {k, std::move(y), *l};
}

WitnessGenerator branch_flip_generator(const BuchiTransducer& t) {
  return [&t](const LassoWord& x, std::size_t k) { return branch_flip_witness(t, x, k); };
}

LassoWord index_projection(const BuchiTransducer& t_f, const LassoWord& x) {
  const auto a = t_f.input_alphabet().find("a");
  const auto b = t_f.input_alphabet().find("b");
  if (!a || !b) throw InvalidArgument("input alphabet lacks the branch letters a and b");
  auto strip = [&](const Word& w) {
    Word out;
    for (Symbol s : w) {
      if (s != *a && s != *b) out.push_back(s);
    }
    return out;
  };
  Word loop = strip(x.loop());
  if (loop.empty()) throw NotInDomain("index projection is finite");
  return lasso_normalize(strip(x.prefix()), std::move(loop));
}

DiscontinuityWitness f_discontinuity_witness(const PcpRegInstance& instance, const BuchiTransducer& t_f,
                                             const LassoWord& x, std::size_t k) {
  if (t_f.input_alphabet().size() != instance.size() + 2) {
    throw InvalidArgument("transducer does not match the instance");
  }
  if (!in_domain(t_f, x)) throw NotInDomain("point outside the domain");
  const LassoWord sigma = index_projection(t_f, x);
  if (verify_solution(instance, sigma)) throw NoWitness("index projection is a solution");
  return branch_flip_witness(t_f, x, k);
}

}  // namespace omega
