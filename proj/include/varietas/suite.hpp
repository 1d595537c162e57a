#pragma once

// Reproduction suite: one group of checks per acceptance criterion, all on
// the bundled fixtures.

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "varietas/expansions.hpp"
#include "varietas/io.hpp"
#include "varietas/operad.hpp"
#include "varietas/report.hpp"

namespace varietas {

struct SuiteOptions {
  unsigned threads = 1;
  /// Criteria to run; empty means all.
  std::set<int> only;
};

inline const std::vector<std::pair<int, std::string>>& suite_criteria() {
  static const std::vector<std::pair<int, std::string>> names = {
      {1, "dimension tables"},        {2, "Koszulness obstruction"}, {3, "duals"},
      {4, "polarization"},            {5, "commutator theorems"},    {6, "anti-commutator theorems"},
      {7, "expansion sanity"},        {8, "opposite varieties"},     {9, "Mal'cev decomposition"},
      {10, "property suites"},
  };
  return names;
}

inline std::string criterion_group(int id) {
  for (const auto& [i, name] : suite_criteria())
    if (i == id) return "criterion " + std::to_string(i) + ": " + name;
  throw InputError("no criterion " + std::to_string(id));
}

namespace detail {

inline Monomial random_tree(std::mt19937& rng, const std::vector<int>& vars, std::size_t b, std::size_t e, int nops) {
  if (e - b == 1) return leaf(vars[b]);
  const std::size_t mid = b + 1 + rng() % (e - b - 1);
  const int op = int(rng() % nops);
  return multiply(Ambient::free_nonassociative, op, random_tree(rng, vars, b, mid, nops),
                  random_tree(rng, vars, mid, e, nops));
}

inline Polynomial random_polynomial(std::mt19937& rng, const SignaturePtr& sig) {
  const int n = 2 + int(rng() % 4);
  Polynomial p(sig, standard_names(n));
  const int terms = 1 + int(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    std::shuffle(vars.begin(), vars.end(), rng);
    Monomial m;
    if (sig->ambient == Ambient::associative_word)
      for (int v : vars) m.tokens.push_back(tok::letter(v));
    else
      m = random_tree(rng, vars, 0, vars.size(), int(sig->ops.size()));
    p.add(m, Rational(int(rng() % 11) - 5, 1 + int(rng() % 4)));
  }
  return p;
}

inline bool relabeling_stable(const IdentitySpace& s) {
  std::vector<int> perm(s.degree());
  for (const auto& f : s.identities()) {
    std::iota(perm.begin(), perm.end(), 0);
    do
      if (!s.contains(permute(f, perm))) return false;
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

class Suite {
 public:
  explicit Suite(const SuiteOptions& opt) : opt_(opt) { copt_.threads = opt.threads; }

  RunReport run() {
    report_.command = "paper-suite";
    const std::map<int, std::function<void()>> steps = {
        {1, [&] { dimensions(); }},   {2, [&] { koszul(); }},      {3, [&] { duals(); }},
        {4, [&] { polarization(); }}, {5, [&] { commutator(); }},  {6, [&] { anticommutator(); }},
        {7, [&] { expansions(); }},   {8, [&] { opposites(); }},   {9, [&] { malcev(); }},
        {10, [&] { properties(); }},
    };
    for (const auto& [id, step] : steps) {
      if (!opt_.only.empty() && !opt_.only.count(id)) continue;
      group_ = criterion_group(id);
      try {
        step();
      } catch (const std::exception& e) {
        CheckRecord r;
        r.name = "unexpected error";
        r.verdict = e.what();
        r.pass = false;
        add(std::move(r));
      }
    }
    return std::move(report_);
  }

 private:
  SuiteOptions opt_;
  ConsequenceOptions copt_;
  RunReport report_;
  std::string group_;
  std::map<std::string, HilbertPrefix> prefixes_;

  void add(CheckRecord r) {
    r.group = group_;
    report_.records.push_back(std::move(r));
  }

  /// Runs `body`, which fills verdict, pass and values; records the time.
  void check(const std::string& name, const std::string& inputs, const std::function<void(CheckRecord&)>& body,
             bool counted = true) {
    CheckRecord r;
    r.name = name;
    r.inputs = inputs;
    r.counted = counted;
    Stopwatch sw;
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.verdict = std::string("error: ") + e.what();
    }
    r.elapsed = sw.seconds();
    add(std::move(r));
  }

  void expect_equal(CheckRecord& r, const std::string& got, const std::string& want) {
    r.values.push_back({"computed", got});
    r.values.push_back({"expected", want});
    r.pass = got == want;
    r.verdict = r.pass ? "match" : "mismatch";
  }

  const HilbertPrefix& prefix(const std::string& fixture) {
    auto it = prefixes_.find(fixture);
    if (it == prefixes_.end()) it = prefixes_.emplace(fixture, hilbert_prefix(fixture_variety(fixture), 5, copt_)).first;
    return it->second;
  }

  void dimensions() {
    check("dim As3(n), n = 1..5", "as3.var",
          [&](CheckRecord& r) { expect_equal(r, join(prefix("as3.var").dims), "1 2 4 1 1"); });
    check("dim As3!(n), n = 1..5", "dual-as3.var",
          [&](CheckRecord& r) { expect_equal(r, join(prefix("dual-as3.var").dims), "1 2 8 41 213"); });
  }

  void koszul() {
    check("H(H!(t)) - t through t^5", "as3.var, dual-as3.var", [&](CheckRecord& r) {
      const auto k = koszul_test(prefix("as3.var"), prefix("dual-as3.var"), 5);
      r.values.push_back({"H", join(prefix("as3.var").coefficients())});
      r.values.push_back({"H!", join(prefix("dual-as3.var").coefficients())});
      expect_equal(r, join(k.residual), "0 0 0 0 1/60");
      r.values.push_back({"reverse residual H!(H(t)) - t", join(k.reverse_residual)});
    });
    check("associative H(H(t)) - t through t^5", "assoc.var", [&](CheckRecord& r) {
      const auto k = koszul_test(prefix("assoc.var"), prefix("assoc.var"), 5);
      expect_equal(r, join(k.residual), "0 0 0 0 0");
    });
  }

  void dual_check(const std::string& source, const std::string& expected, bool counted = true) {
    check("dual(" + source + ") vs " + expected, source + ", " + expected,
          [&](CheckRecord& r) {
            const auto d = lie_admissible_dual(degree3_presentation(fixture_variety(source), std::nullopt, copt_));
            const auto want = consequence_space(fixture_variety(expected), 3, copt_);
            const Verdict v = compare_spaces(d.relations, want);
            r.verdict = verdict_name(v);
            r.pass = v == Verdict::equal;
            r.values.push_back({"basis", join([&] {
                                  std::vector<std::string> b;
                                  for (const auto& m : d.basis)
                                    b.push_back(to_string(m, *fixture_variety(source).signature, standard_names(3)));
                                  return b;
                                }())});
            r.values.push_back({"dual relation rank", std::to_string(d.relations.rank())});
            r.values.push_back({"expected relation rank", std::to_string(want.rank())});
          },
          counted);
  }

  void duals() {
    dual_check("as3.var", "dual-as3.var");
    dual_check("as1.var", "alt.var");
    dual_check("as2.var", "assosym.var");
    dual_check("as4.var", "dual-as4.var", false);
  }

  void polar_check(const std::string& variety, const std::string& display, const Rational& ks, const Rational& ka,
                   const std::string& convention, bool counted = true) {
    check("polarize " + variety + " (" + convention + ") vs " + display, variety + ", " + display,
          [&](CheckRecord& r) {
            const auto p = polarize(fixture_variety(variety), ks, ka);
            const auto want = symmetric_span(
                fixture_identities(display, make_signature(Ambient::free_nonassociative, {"[,]", "{,}"})));
            const Verdict v = compare_spaces(p.space, want);
            r.verdict = verdict_name(v);
            r.pass = v == Verdict::equal;
            r.values.push_back({"polarized rank", std::to_string(p.space.rank())});
            r.values.push_back({"display rank", std::to_string(want.rank())});
          },
          counted);
  }

  void polarization() {
    const Rational ks(-1), ka(1);
    polar_check("assoc.var", "polar-assoc.ids", ks, ka, "xy = [x,y] - {x,y}");
    polar_check("as1.var", "polar-as1.ids", ks, ka, "xy = [x,y] - {x,y}");
    polar_check("as2.var", "polar-as2.ids", ks, ka, "xy = [x,y] - {x,y}");
    polar_check("as3.var", "polar-as3.ids", ks, ka, "xy = [x,y] - {x,y}");
    polar_check("as3.var", "polar-as3.ids", Rational(1), Rational(1), "xy = [x,y] + {x,y}", false);
  }

  /// Kernel of the expansion into `target` against the closure of the
  /// generators, degree by degree.
  void theorem(const ExpansionMap& e, const std::string& target, const std::string& gens, int max_degree) {
    const auto v = fixture_variety(target);
    const auto g = fixture_identities(gens, e.source);
    for (int n = 2; n <= max_degree; ++n)
      check(std::string(expansion_name(e.kind)) + " kernel of " + target + " at degree " + std::to_string(n) +
                " vs closure of " + gens,
            target + ", " + gens, [&](CheckRecord& r) {
              const auto k = expansion_kernel(e, v, n, copt_);
              const auto gb = generated_by(g, k, copt_);
              r.verdict = verdict_name(gb.verdict);
              r.pass = gb.verdict == Verdict::equal;
              r.values.push_back({"closure rank", std::to_string(gb.closure_rank)});
              r.values.push_back({"kernel rank", std::to_string(gb.kernel_rank)});
            });
  }

  void kernel_membership(const ExpansionMap& e, const std::string& target, const std::string& ids, int n) {
    check(ids + " in the " + expansion_name(e.kind) + " kernel of " + target + " at degree " + std::to_string(n),
          target + ", " + ids, [&](CheckRecord& r) {
            const auto k = expansion_kernel(e, fixture_variety(target), n, copt_);
            r.pass = true;
            for (const auto& f : fixture_identities(ids, e.source))
              if (!k.contains(f)) r.pass = false;
            r.verdict = r.pass ? "member" : "not a member";
            r.values.push_back({"kernel rank", std::to_string(k.rank())});
          });
  }

  const SignaturePtr& word() {
    static const SignaturePtr w = make_signature(Ambient::associative_word, {"*"});
    return w;
  }

  void commutator() {
    const auto e = commutator_map(word());
    theorem(e, "as1.var", "lie.ids", 4);
    theorem(e, "as2.var", "lie-metab.ids", 4);
    theorem(e, "as3.var", "lie-nilp4.ids", 4);
    theorem(e, "as4.var", "lie-nilp4.ids", 4);
    kernel_membership(e, "as1.var", "as1-lie-deg5.ids", 5);
    check("Jacobi closure in the commutator kernel of as1.var at degree 5", "as1.var, lie.ids", [&](CheckRecord& r) {
      const auto k = expansion_kernel(e, fixture_variety("as1.var"), 5, copt_);
      const auto gb = generated_by(fixture_identities("lie.ids", e.source), k, copt_);
      r.verdict = verdict_name(gb.verdict);
      r.pass = gb.verdict == Verdict::strictly_contained;
      r.values.push_back({"closure rank", std::to_string(gb.closure_rank)});
      r.values.push_back({"kernel rank", std::to_string(gb.kernel_rank)});
    });
  }

  void anticommutator() {
    const auto e = anticommutator_map(word());
    theorem(e, "as1.var", "mock-lie.ids", 4);
    theorem(e, "as2.var", "as2-jordan.ids", 4);
    theorem(e, "as3.var", "as3-jordan.ids", 4);
    kernel_membership(e, "as1.var", "as1-jordan-deg5.ids", 5);
  }

  void expansions() {
    const auto assoc = fixture_variety("assoc.var");
    const auto nov = fixture_variety("novikov-nc.var");
    check("Novikov identities via x>y = x'y, x<y = xy'", "assoc.var, novikov-nc.var", [&](CheckRecord& r) {
      r.pass = true;
      for (const auto& f : nov.identities) {
        const auto d = diff_identity_holds(assoc, f, -1, copt_);
        if (!d.holds) {
          r.pass = false;
          std::vector<std::string> md;
          for (const auto& x : d.failing) md.push_back(multidegree_text(x));
          r.values.push_back({"failing " + print_canonical(f), join(md)});
        }
      }
      r.verdict = r.pass ? "holds" : "fails";
    });
    const auto dend = fixture_variety("dendriform.var");
    check("dendriform identities via R", "assoc.var, dendriform.var", [&](CheckRecord& r) {
      r.pass = true;
      for (const auto& f : dend.identities)
        if (!rb_identity_holds(assoc, f, rota_baxter_map())) {
          r.pass = false;
          r.values.push_back({"failing", print_canonical(f)});
        }
      r.verdict = r.pass ? "holds" : "fails";
    });
    const auto nsig = derivation_map().source, dsig = rota_baxter_map().source;
    for (int i = 1; i <= 3; ++i) {
      const std::string var = "as" + std::to_string(i) + ".var";
      const auto v = fixture_variety(var);
      check("Der-As" + std::to_string(i) + " identities", var + ", der-as" + std::to_string(i) + ".ids",
            [&](CheckRecord& r) {
              r.pass = true;
              for (const auto& f : fixture_identities("der-as" + std::to_string(i) + ".ids", nsig))
                if (!diff_identity_holds(v, f, -1, copt_).holds) {
                  r.pass = false;
                  r.values.push_back({"failing", print_canonical(f)});
                }
              r.verdict = r.pass ? "holds" : "fails";
            });
      check("pre-As" + std::to_string(i) + " identities", var + ", pre-as" + std::to_string(i) + ".ids",
            [&](CheckRecord& r) {
              r.pass = true;
              for (const auto& f : fixture_identities("pre-as" + std::to_string(i) + ".ids", dsig))
                if (!rb_identity_holds(v, f, rota_baxter_map())) {
                  r.pass = false;
                  r.values.push_back({"failing", print_canonical(f)});
                }
              r.verdict = r.pass ? "holds" : "fails";
            });
      check("(X, a*b = aR(b) + R(a)b) is an As" + std::to_string(i) + "-algebra", var, [&](CheckRecord& r) {
        r.pass = true;
        for (const auto& f : to_tree_presentation(v).identities)
          if (!rb_identity_holds(v, f, star_map())) {
            r.pass = false;
            r.values.push_back({"failing", print_canonical(f)});
          }
        r.verdict = r.pass ? "holds" : "fails";
      });
    }
  }

  void opposites() {
    const auto op3 = opposite(fixture_variety("as3.var"));
    const auto as4 = fixture_variety("as4.var");
    for (int n = 3; n <= 5; ++n)
      check("consequences of opposite(As3) vs As4 at degree " + std::to_string(n), "as3.var, as4.var",
            [&](CheckRecord& r) {
              const Verdict v = compare_spaces(consequence_space(op3, n, copt_), consequence_space(as4, n, copt_));
              r.verdict = verdict_name(v);
              r.pass = v == Verdict::equal;
            });
    for (auto e : {commutator_map(word()), anticommutator_map(word())})
      for (int n = 2; n <= 4; ++n)
        check(std::string(expansion_name(e.kind)) + " kernels of opposite(As3) and As4 at degree " + std::to_string(n),
              "as3.var, as4.var", [&](CheckRecord& r) {
                const Verdict v = compare_spaces(expansion_kernel(e, op3, n, copt_), expansion_kernel(e, as4, n, copt_));
                r.verdict = verdict_name(v);
                r.pass = v == Verdict::equal;
              });
  }

  void malcev() {
    check("orbit spans of the degree-3 Mal'cev identities", "malcev.ids", [&](CheckRecord& r) {
      const auto d = s3_decomposition(fixture_identities("malcev.ids", word()));
      r.values.push_back({"orbit dimensions", join(d.orbit_dims)});
      r.values.push_back({"sum", std::to_string(d.sum_rank) + " of " + std::to_string(d.ambient_dim)});
      r.pass = d.direct_sum();
      r.verdict = r.pass ? "direct sum" : (d.independent() ? "independent, not spanning" : "not independent");
    });
  }

  void properties() {
    const char* words[] = {"as1.var", "as2.var", "as3.var", "as4.var"};
    check("word and tree dimensions agree, n <= 4", "as1.var .. as4.var", [&](CheckRecord& r) {
      r.pass = true;
      for (const char* f : words) {
        const auto v = fixture_variety(f);
        const auto t = to_tree_presentation(v);
        std::vector<std::size_t> a, b;
        for (int n = 1; n <= 4; ++n) {
          a.push_back(dim_multilinear(v, n, copt_));
          b.push_back(dim_multilinear(t, n, copt_));
        }
        r.values.push_back({f, join(a) + " / " + join(b)});
        if (a != b) r.pass = false;
      }
      r.verdict = r.pass ? "agree" : "disagree";
    });
    check("consequence spaces are closed under relabeling, n <= 4", "bundled varieties", [&](CheckRecord& r) {
      r.pass = true;
      for (const char* f : {"as1.var", "as2.var", "as3.var", "as4.var", "alt.var", "assosym.var", "dual-as3.var",
                            "novikov-nc.var", "dendriform.var"}) {
        const auto v = fixture_variety(f);
        for (int n = v.min_degree(); n <= 4; ++n)
          if (!relabeling_stable(consequence_space(v, n, copt_))) {
            r.pass = false;
            r.values.push_back({"unstable", std::string(f) + " n=" + std::to_string(n)});
          }
      }
      r.verdict = r.pass ? "stable" : "unstable";
    });
    check("expansion kernels are invariant under rescaling", "as1.var .. as3.var", [&](CheckRecord& r) {
      r.pass = true;
      for (const char* f : {"as1.var", "as2.var", "as3.var"}) {
        const auto v = fixture_variety(f);
        for (auto e : {commutator_map(word()), anticommutator_map(word())})
          for (int n = 2; n <= 4; ++n)
            if (!(expansion_kernel(e, v, n, copt_) == expansion_kernel(e.scaled(Rational(-7, 3)), v, n, copt_)))
              r.pass = false;
      }
      r.verdict = r.pass ? "invariant" : "changed";
    });
    check("RREF is idempotent and independent of row order", "consequence spaces at degree 4", [&](CheckRecord& r) {
      r.pass = true;
      std::mt19937 rng(17);
      for (const char* f : {"as2.var", "as3.var"}) {
        const auto s = consequence_space(fixture_variety(f), 4, copt_);
        const RrefResult once = s.rref();
        if (!(rref(once.matrix) == once)) r.pass = false;
        auto rows = s.space().rows();
        std::vector<std::size_t> idx(rows.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        RationalMatrix m(rows.size() * 2, s.basis().size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
          const std::size_t j = idx[(i + 1) % idx.size()];
          for (const auto& e : rows[idx[i]]) m(i, e.col) += e.value;
          // Extra rows: sums of two rows, which keep the span unchanged.
          for (const auto& e : rows[idx[i]]) m(rows.size() + i, e.col) += e.value * Rational(3);
          for (const auto& e : rows[j]) m(rows.size() + i, e.col) -= e.value;
        }
        if (!(to_row_space(rref(m)).to_rref() == once)) r.pass = false;
      }
      r.verdict = r.pass ? "unique" : "differs";
    });
    check("print/parse round trip on 100 random identities", "seed 2024", [&](CheckRecord& r) {
      std::mt19937 rng(2024);
      const SignaturePtr sigs[] = {
          word(), make_signature(Ambient::free_nonassociative, {"*"}),
          make_signature(Ambient::free_nonassociative, {">", "<"}),
          make_signature(Ambient::free_nonassociative, {"<=", ">="}),
          make_signature(Ambient::free_nonassociative, {"[,]", "{,}"})};
      int ok = 0, tried = 0;
      for (int i = 0; i < 100; ++i) {
        const Polynomial p = random_polynomial(rng, sigs[i % 5]);
        ++tried;
        if (p.is_zero() || (parse(to_string(p), p.signature_ptr()).renamed(p.vars()) == p &&
                            parse(print_canonical(p), p.signature_ptr()).renamed(p.vars()) == normalized(p)))
          ++ok;
      }
      r.values.push_back({"round trips", std::to_string(ok) + " of " + std::to_string(tried)});
      r.pass = ok == tried;
      r.verdict = r.pass ? "identical" : "differs";
    });
  }
};

}  // namespace detail

inline RunReport reproduction_suite(const SuiteOptions& opt = {}) { return detail::Suite(opt).run(); }

/// Criterion id of a suite group name, or 0.
inline int criterion_of(const std::string& group) {
  for (const auto& [i, name] : suite_criteria())
    if (group == "criterion " + std::to_string(i) + ": " + name) return i;
  return 0;
}

}  // namespace varietas
