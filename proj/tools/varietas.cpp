#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "varietas/suite.hpp"

using namespace varietas;

namespace {

struct Common {
  std::string format = "text";
  std::string output;
  unsigned threads = 1;
  bool timing = false;
};

ConsequenceOptions consequence_options(const Common& c) {
  ConsequenceOptions o;
  o.threads = c.threads;
  return o;
}

std::string quote_args(int argc, char** argv) {
  std::string s = "varietas";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    s += a.find_first_of(" \t") == std::string::npos ? " " + a : " \"" + a + "\"";
  }
  return s;
}

/// Runs `body` as one timed record appended to `report`.
void record(RunReport& report, const std::string& name, const std::string& inputs,
            const std::function<void(CheckRecord&)>& body) {
  CheckRecord r;
  r.name = name;
  r.inputs = inputs;
  Stopwatch sw;
  body(r);
  r.elapsed = sw.seconds();
  report.records.push_back(std::move(r));
}

std::vector<Polynomial> gather_identities(const std::vector<std::string>& exprs, const std::string& file,
                                          const SignaturePtr& sig) {
  std::vector<Polynomial> out;
  for (const auto& e : exprs) out.push_back(parse(e, sig));
  if (file.ends_with(".var")) {
    const auto v = load_variety(file);
    if (!v.signature->same_algebra(*sig)) throw InputError("'" + file + "' is over a different signature");
    for (const auto& p : v.identities) out.push_back(p);
  } else if (!file.empty()) {
    for (auto& p : load_identities(file, sig)) out.push_back(std::move(p));
  }
  if (out.empty()) throw InputError("no identities given (use --identity or --identities)");
  return out;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size()) throw InputError("expected a list of dimensions, got '" + s + "'");
    out.push_back(v);
  }
  return out;
}

// ------------------------------------------------------------------- verbs

void dim_verb(RunReport& rep, const Common& c, const std::string& file, int max_degree, const std::string& expect) {
  const auto v = load_variety(file);
  record(rep, "dim " + v.name + ", n = 1.." + std::to_string(max_degree), file, [&](CheckRecord& r) {
    std::vector<std::size_t> dims;
    for (int n = 1; n <= max_degree; ++n) dims.push_back(dim_multilinear(v, n, consequence_options(c)));
    r.verdict = join(dims);
    r.values.push_back({"dims", join(dims)});
    if (!expect.empty()) {
      const auto want = parse_dims(expect);
      r.values.push_back({"expected", join(want)});
      r.pass = want == dims;
    }
  });
}

void dual_verb(RunReport& rep, const Common& c, const std::string& file, const std::string& basis_text,
               const std::string& expect, const std::string& write) {
  const auto v = load_variety(file);
  std::optional<std::vector<Monomial>> basis;
  if (!basis_text.empty()) {
    basis.emplace();
    std::string item;
    std::istringstream in(basis_text);
    while (std::getline(in, item, ',')) {
      const Polynomial p = parse(detail::trim(item), v.signature);
      if (p.size() != 1 || p.degree() != 3) throw InputError("basis element '" + item + "' is not a degree-3 monomial");
      basis->push_back(p.renamed(standard_names(3)).terms().begin()->first);
    }
  }
  record(rep, "Koszul dual of " + v.name, file, [&](CheckRecord& r) {
    const auto pres = degree3_presentation(v, basis, consequence_options(c));
    const auto d = lie_admissible_dual(pres);
    const auto& names = standard_names(3);
    std::vector<std::string> btext;
    for (const auto& m : pres.basis) btext.push_back(to_string(m, *v.signature, names));
    r.values.push_back({"basis", join(btext)});
    for (const auto& [m, combo] : pres.rewrite) {
      Polynomial q(v.signature, names);
      for (const auto& [i, k] : combo) q.add(pres.basis[i], k);
      r.values.push_back({"rewrite " + to_string(m, *v.signature, names), to_string(q)});
    }
    for (std::size_t i = 0; i < d.basis.size(); ++i)
      r.values.push_back({"coefficient of " + btext[i], to_string(d.coefficients[i])});
    const auto rel = d.relations.identities();
    r.values.push_back({"relation rank", std::to_string(d.relations.rank())});
    for (std::size_t i = 0; i < rel.size(); ++i)
      r.values.push_back({"relation " + std::to_string(i + 1), print_canonical(rel[i])});
    r.verdict = "relation rank " + std::to_string(d.relations.rank());
    if (!expect.empty()) {
      const auto want = consequence_space(load_variety(expect), 3, consequence_options(c));
      const Verdict verdict = compare_spaces(d.relations, want);
      r.verdict = verdict_name(verdict);
      r.pass = verdict == Verdict::equal;
      r.values.push_back({"expected", expect});
    }
    if (!write.empty()) {
      std::ofstream out(write);
      if (!out) throw InputError("cannot write '" + write + "'");
      out << variety_text(d.dual);
    }
  });
}

void koszul_verb(RunReport& rep, const Common& c, const std::string& file, const std::string& dual_file, int N) {
  const auto v = load_variety(file), d = load_variety(dual_file);
  record(rep, "Hilbert series test " + v.name + " / " + d.name + " through t^" + std::to_string(N),
         file + ", " + dual_file, [&](CheckRecord& r) {
           const auto h = hilbert_prefix(v, N, consequence_options(c));
           const auto hd = hilbert_prefix(d, N, consequence_options(c));
           const auto k = koszul_test(h, hd, N);
           r.values.push_back({"dims", join(h.dims)});
           r.values.push_back({"dual dims", join(hd.dims)});
           r.values.push_back({"H", join(h.coefficients())});
           r.values.push_back({"H!", join(hd.coefficients())});
           r.values.push_back({"residual", join(k.residual)});
           r.values.push_back({"reverse residual", join(k.reverse_residual)});
           r.pass = k.passes();
           r.verdict = r.pass ? "residual zero" : "nonzero residual: necessary Koszulness condition fails";
         });
}

void polarize_verb(RunReport& rep, const std::string& file, const std::string& convention, const std::string& expect) {
  const auto v = load_variety(file);
  const bool paper = convention == "paper";
  const Rational ks = paper ? Rational(-1) : Rational(1, 2), ka = paper ? Rational(1) : Rational(1, 2);
  record(rep, "polarization of " + v.name + " (" + convention + " convention)", file, [&](CheckRecord& r) {
    const auto p = polarize(v, ks, ka);
    r.values.push_back({"rank", std::to_string(p.space.rank())});
    for (std::size_t i = 0; i < p.identities.size(); ++i)
      r.values.push_back({"identity " + std::to_string(i + 1), print_canonical(p.identities[i])});
    r.verdict = "rank " + std::to_string(p.space.rank());
    if (!expect.empty()) {
      const auto want = symmetric_span(load_identities(expect, p.space.basis().signature_ptr()));
      const Verdict verdict = compare_spaces(p.space, want);
      r.verdict = verdict_name(verdict);
      r.pass = verdict == Verdict::equal;
      r.values.push_back({"expected", expect});
    }
  });
}

void derived_verb(RunReport& rep, const Common& c, const std::string& file, const std::string& sign, int degree,
                  const std::string& generators) {
  const auto v = load_variety(file);
  const ExpansionMap e = sign == "minus" ? commutator_map(v.signature) : anticommutator_map(v.signature);
  const std::vector<Polynomial> gens = generators.empty() ? std::vector<Polynomial>{} : load_identities(generators, e.source);
  for (int n = generators.empty() ? degree : 2; n <= degree; ++n)
    record(rep, std::string(expansion_name(e.kind)) + " identities of " + v.name + " at degree " + std::to_string(n),
           file + (generators.empty() ? "" : ", " + generators), [&](CheckRecord& r) {
             const auto k = expansion_kernel(e, v, n, consequence_options(c));
             r.values.push_back({"kernel rank", std::to_string(k.rank())});
             if (generators.empty()) {
               const auto ids = k.identities();
               for (std::size_t i = 0; i < ids.size(); ++i)
                 r.values.push_back({"identity " + std::to_string(i + 1), print_canonical(ids[i])});
               r.verdict = "kernel rank " + std::to_string(k.rank());
               return;
             }
             const auto g = generated_by(gens, k, consequence_options(c));
             r.values.push_back({"closure rank", std::to_string(g.closure_rank)});
             r.verdict = verdict_name(g.verdict);
             r.pass = g.verdict == Verdict::equal;
           });
}

void check_verb(RunReport& rep, const Common& c, const std::string& file, const std::vector<std::string>& exprs,
                const std::string& ids_file, bool certificate) {
  const auto v = load_variety(file);
  for (const auto& f : gather_identities(exprs, ids_file, v.signature))
    record(rep, print_canonical(f) + " in " + v.name, file, [&](CheckRecord& r) {
      const auto m = identity_holds(v, f, certificate, consequence_options(c));
      r.pass = m.holds;
      r.verdict = m.holds ? "holds" : "does not hold";
      if (m.certificate) {
        r.values.push_back({"certificate terms", std::to_string(m.certificate->size())});
        for (const auto& t : *m.certificate)
          r.values.push_back({t.coefficient.to_string() + " * " + t.origin, to_string(t.generator)});
      }
    });
}

void expand_check_verb(RunReport& rep, const Common& c, const std::string& file, const std::string& kind,
                       const std::vector<std::string>& exprs, const std::string& ids_file) {
  const auto v = load_variety(file);
  const ExpansionMap e = kind == "diff" ? derivation_map() : kind == "rb" ? rota_baxter_map() : star_map();
  for (const auto& f : gather_identities(exprs, ids_file, e.source))
    record(rep, print_canonical(f) + " via " + expansion_name(e.kind) + " over " + v.name, file, [&](CheckRecord& r) {
      if (kind == "diff") {
        const auto d = diff_identity_holds(v, f, -1, consequence_options(c));
        r.pass = d.holds;
        std::vector<std::string> md;
        for (const auto& x : d.failing) md.push_back(multidegree_text(x));
        if (!md.empty()) r.values.push_back({"failing multidegrees", join(md)});
      } else {
        r.pass = rb_identity_holds(v, f, e);
      }
      r.verdict = r.pass ? "holds" : "does not hold";
    });
}

void opposite_verb(RunReport& rep, const Common& c, const std::string& file, const std::string& compare,
                   int max_degree) {
  const auto v = load_variety(file);
  const auto op = opposite(v);
  record(rep, "opposite of " + v.name, file, [&](CheckRecord& r) {
    r.verdict = op.name;
    for (std::size_t i = 0; i < op.identities.size(); ++i)
      r.values.push_back({"identity " + std::to_string(i + 1), print_canonical(op.identities[i])});
  });
  if (compare.empty()) return;
  const auto w = load_variety(compare);
  for (int n = std::max(op.min_degree(), 1); n <= max_degree; ++n)
    record(rep, "consequences of " + op.name + " vs " + w.name + " at degree " + std::to_string(n),
           file + ", " + compare, [&](CheckRecord& r) {
             const Verdict verdict = compare_spaces(consequence_space(op, n, consequence_options(c)),
                                                    consequence_space(w, n, consequence_options(c)));
             r.verdict = verdict_name(verdict);
             r.pass = verdict == Verdict::equal;
           });
}

void s3_verb(RunReport& rep, const std::string& file, const std::string& ambient, const std::vector<std::string>& ops) {
  const SignaturePtr sig =
      make_signature(ambient == "associative" ? Ambient::associative_word : Ambient::free_nonassociative, ops);
  record(rep, "orbit decomposition of " + file, file, [&](CheckRecord& r) {
    const auto d = s3_decomposition(load_identities(file, sig));
    r.values.push_back({"orbit dimensions", join(d.orbit_dims)});
    r.values.push_back({"sum rank", std::to_string(d.sum_rank)});
    r.values.push_back({"component dimension", std::to_string(d.ambient_dim)});
    r.pass = d.direct_sum();
    r.verdict = r.pass ? "direct sum" : (d.independent() ? "independent, not spanning" : "not independent");
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial identities of nonassociative algebras: dimensions, duals, expansions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Report format")
      ->check(CLI::IsMember({"text", "kv"}))
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "Write the report to a file");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--timing", common.timing, "Include elapsed times");
  app.fallthrough();

  std::string file, second, expect, generators, ids_file, basis, write, compare, sign = "minus",
                                                                                  convention = "paper", kind,
                                                                                  ambient = "associative";
  std::vector<std::string> exprs, ops{"*"};
  std::vector<int> only;
  int max_degree = 5, N = 5, degree = 4;
  bool certificate = false;

  auto* dim = app.add_subcommand("dim", "Dimensions of the multilinear components");
  dim->add_option("variety", file, "Variety file")->required();
  dim->add_option("--max-degree", max_degree, "Largest degree")->check(CLI::Range(1, 7))->capture_default_str();
  dim->add_option("--expect", expect, "Expected dimensions, e.g. \"1 2 4 1 1\"");

  auto* dual = app.add_subcommand("dual", "Koszul dual through Lie-admissibility of the tensor product");
  dual->add_option("variety", file, "Variety file with one operation")->required();
  dual->add_option("--basis", basis, "Comma-separated degree-3 basis, e.g. abc,acb,bac,bca");
  dual->add_option("--expect", expect, "Variety whose degree-3 relations the dual should equal");
  dual->add_option("--write-variety", write, "Write the dual as a variety file");

  auto* koszul = app.add_subcommand("koszul", "Hilbert series composition test");
  koszul->add_option("variety", file, "Variety file")->required();
  koszul->add_option("dual", second, "Dual variety file")->required();
  koszul->add_option("-N", N, "Truncation degree")->check(CLI::Range(2, 7))->capture_default_str();

  auto* polar = app.add_subcommand("polarize", "Rewrite identities with [,] and {,}");
  polar->add_option("variety", file, "Variety file")->required();
  polar->add_option("--convention", convention, "paper: xy = [x,y] - {x,y}; standard: xy = ([x,y] + {x,y})/2")
      ->check(CLI::IsMember({"paper", "standard"}))
      ->capture_default_str();
  polar->add_option("--expect", expect, "Identity list whose span the output should equal");

  auto* derived = app.add_subcommand("derived", "Identities of the commutator or anti-commutator algebra");
  derived->add_option("variety", file, "Variety file with one operation")->required();
  derived->add_option("--sign", sign, "minus: [a,b] = ab - ba; plus: {a,b} = ab + ba")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  derived->add_option("--degree", degree, "Largest degree")->check(CLI::Range(2, 5))->capture_default_str();
  derived->add_option("--generators", generators, "Identity list to compare against, degree by degree");

  auto* check = app.add_subcommand("check", "Whether identities follow from a variety's identities");
  check->add_option("variety", file, "Variety file")->required();
  check->add_option("--identity", exprs, "Identity expression (repeatable)");
  check->add_option("--identities", ids_file, "Identity list file");
  check->add_flag("--certificate", certificate, "Print a combination of consequences");

  auto* xcheck = app.add_subcommand("expand-check", "Identities through derivations or Rota-Baxter operators");
  xcheck->add_option("variety", file, "Word variety file")->required();
  xcheck->add_option("--kind", kind, "diff: x>y = x'y, x<y = xy'; rb: dendriform; star: a*b = aR(b) + R(a)b")
      ->required()
      ->check(CLI::IsMember({"diff", "rb", "star"}));
  xcheck->add_option("--identity", exprs, "Identity expression (repeatable)");
  xcheck->add_option("--identities", ids_file, "Identity list file");

  auto* opp = app.add_subcommand("opposite", "Opposite variety");
  opp->add_option("variety", file, "Variety file")->required();
  opp->add_option("--compare", compare, "Variety to compare consequence spaces with");
  opp->add_option("--max-degree", max_degree, "Largest degree for --compare")->check(CLI::Range(1, 6))->capture_default_str();

  auto* s3 = app.add_subcommand("s3-decomp", "Orbit spans of same-degree identities");
  s3->add_option("identities", file, "Identity list file")->required();
  s3->add_option("--ambient", ambient, "associative or nonassociative")
      ->check(CLI::IsMember({"associative", "nonassociative"}))
      ->capture_default_str();
  s3->add_option("--op", ops, "Operation glyphs")->capture_default_str();

  auto* suite = app.add_subcommand("paper-suite", "Run every reproduction check");
  suite->add_option("--only", only, "Criteria to run, e.g. 1,3")->delimiter(',')->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunReport rep;
  rep.command = quote_args(argc, argv);
  try {
    if (*dim) dim_verb(rep, common, file, max_degree, expect);
    if (*dual) dual_verb(rep, common, file, basis, expect, write);
    if (*koszul) koszul_verb(rep, common, file, second, N);
    if (*polar) polarize_verb(rep, file, convention, expect);
    if (*derived) derived_verb(rep, common, file, sign, degree, generators);
    if (*check) check_verb(rep, common, file, exprs, ids_file, certificate);
    if (*xcheck) expand_check_verb(rep, common, file, kind, exprs, ids_file);
    if (*opp) opposite_verb(rep, common, file, compare, max_degree);
    if (*s3) s3_verb(rep, file, ambient, ops);
    if (*suite) {
      SuiteOptions opt;
      opt.threads = common.threads;
      opt.only.insert(only.begin(), only.end());
      const std::string command = rep.command;
      rep = reproduction_suite(opt);
      rep.command = command;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string body = common.format == "kv" ? rep.kv(common.timing) : rep.text(common.timing);
  if (common.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(common.output);
    if (!out) {
      std::cerr << "error: cannot write '" << common.output << "'\n";
      return 2;
    }
    out << body;
    std::cout << (rep.passed() ? "PASS" : "FAIL") << " (report written to " << common.output << ")\n";
  }
  return rep.passed() ? 0 : 1;
}
