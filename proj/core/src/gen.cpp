#include "dcm/gen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dcm/errors.hpp"
#include "dcm/opt.hpp"

namespace dcm {

ConstraintStyle constraint_style_from_name(const std::string& name) {
  if (name == "pairs") return ConstraintStyle::Pairs;
  if (name == "laminar") return ConstraintStyle::Laminar;
  if (name == "random-subsets") return ConstraintStyle::RandomSubsets;
  throw ValidationError("unknown constraint style: '" + name + "'");
}

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) {  // inclusive
  return lo + static_cast<long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

std::vector<int> shuffled(int n, std::mt19937_64& rng) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(v[i], v[static_cast<int>(draw(rng, 0, i))]);
  return v;
}

/// Integer quota interval for a type subset holding `mass` students spread
/// over `n_schools` schools. Tightness narrows the interval around the
/// uniform share; lower bounds stay rare so most draws remain feasible.
std::pair<long, long> draw_bounds(std::mt19937_64& rng, long mass, int n_schools,
                                  double tightness) {
  const long fair = std::max(1L, (mass + n_schools - 1) / n_schools);
  const long slack = std::max(0L, static_cast<long>((1.0 - tightness) * (mass - fair)));
  const long upper = std::min(mass, fair + (slack > 0 ? draw(rng, 0, slack) : 0));
  long lower = 0;
  if (draw(rng, 0, 3) == 0)  // occasional binding lower bound
    lower = draw(rng, 0, std::min(upper, fair / 2 + (fair % 2)));
  return {lower, upper};
}

void laminar_family(const std::vector<int>& types, std::mt19937_64& rng,
                    std::vector<std::vector<int>>* out) {
  if (types.empty()) return;
  out->push_back(types);
  if (types.size() < 2 || draw(rng, 0, 2) == 0) return;
  const size_t cut = static_cast<size_t>(draw(rng, 1, static_cast<long>(types.size()) - 1));
  laminar_family({types.begin(), types.begin() + cut}, rng, out);
  laminar_family({types.begin() + cut, types.end()}, rng, out);
}

Instance build_candidate(const GenParams& p, std::mt19937_64& rng) {
  Instance inst;
  for (int s = 0; s < p.n_schools; ++s) inst.schools.push_back("s" + std::to_string(s + 1));
  // every type must be inhabited, so cap the type count by the student count
  const int n_types = std::min(p.n_types, p.n_students);
  for (int t = 0; t < n_types; ++t) {
    inst.types.push_back("t" + std::to_string(t + 1));
    inst.type_counts.push_back(0);
  }

  for (int i = 0; i < p.n_students; ++i) {
    Student st;
    st.id = "i" + std::to_string(i + 1);
    st.type = i < n_types ? i : static_cast<int>(draw(rng, 0, n_types - 1));
    ++inst.type_counts[st.type];
    st.prefs = shuffled(p.n_schools, rng);
    inst.students.push_back(std::move(st));
  }

  const auto subset_mass = [&inst](const std::vector<int>& types) {
    long m = 0;
    for (int t : types) m += inst.type_counts[t];
    return m;
  };
  const auto add_constraint = [&](int school, std::vector<int> types) {
    std::sort(types.begin(), types.end());
    for (const auto& c : inst.constraints)
      if (c.school == school && c.types == types) return;  // dedupe (s, R)
    const auto [lo, hi] = draw_bounds(rng, subset_mass(types), p.n_schools,
                                      p.bound_tightness);
    inst.constraints.push_back({school, std::move(types), rat(lo), rat(hi)});
  };

  for (int s = 0; s < p.n_schools; ++s) {
    switch (p.style) {
      case ConstraintStyle::Pairs: {
        if (n_types < 2) {
          add_constraint(s, {0});
          break;
        }
        const long n_pairs = draw(rng, 1, std::min(3, n_types));
        for (long k = 0; k < n_pairs; ++k) {
          int a = static_cast<int>(draw(rng, 0, n_types - 1));
          int b = static_cast<int>(draw(rng, 0, n_types - 2));
          if (b >= a) ++b;
          add_constraint(s, {a, b});
        }
        break;
      }
      case ConstraintStyle::Laminar: {
        std::vector<std::vector<int>> family;
        laminar_family(shuffled(n_types, rng), rng, &family);
        for (auto& r : family) add_constraint(s, std::move(r));
        break;
      }
      case ConstraintStyle::RandomSubsets: {
        const long n_subsets = draw(rng, 1, 3);
        for (long k = 0; k < n_subsets; ++k) {
          std::vector<int> r;
          for (int t = 0; t < n_types; ++t)
            if (draw(rng, 0, 1) == 1) r.push_back(t);
          if (r.empty()) r.push_back(static_cast<int>(draw(rng, 0, n_types - 1)));
          add_constraint(s, std::move(r));
        }
        break;
      }
    }
  }

  inst.validate();
  return inst;
}

}  // namespace

Instance gen_instance(const GenParams& params) {
  if (params.n_students <= 0 || params.n_schools <= 0 || params.n_types <= 0)
    throw ValidationError("generator parameters must be positive");
  std::mt19937_64 rng(params.seed);
  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    Instance inst = build_candidate(params, rng);
    try {
      compute_opt(inst);
      return inst;
    } catch (const InfeasibleInstance&) {
      continue;  // redraw everything from the same stream
    }
  }
  throw InfeasibleInstance("no feasible instance found within the retry budget");
}

}  // namespace dcm
