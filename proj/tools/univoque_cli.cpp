// univoque: command-line front end for the library.
//
// Payloads go to stdout as JSON (CSV for staircase and `plateaus --format csv`).
// Exit codes: 0 success, 1 usage error, 2 domain error with {"error": name},
// 3 when `verify` finds a failing criterion.

#include <iostream>

#include <CLI11.hpp>

#include "acceptance_suite.hpp"
#include "serialize.hpp"

namespace {

using namespace univoque;
using io::Json;

struct Options {
  int M = 1;
  unsigned precision = 256;
  std::size_t depth = 64;
  std::size_t n = 32;
  std::size_t m_max = 6;
  std::size_t n_max = 14;
  std::size_t samples = 50;
  std::string format = "json";
  std::string q, seq, word, q_lo, q_hi;
  std::optional<std::size_t> j_max;
  std::optional<unsigned> edim;
  bool rr_chain = false;
  std::vector<int> only;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Alphabet alphabet_of(const Options& o) {
  if (o.M < 1) throw Error(ErrorKind::OutOfRange, "M must be at least 1");
  return Alphabet(o.M);
}

int cmd_expand(const Options& o) {
  Alphabet A = alphabet_of(o);
  Base q = io::parse_base(o.q, A);
  Word digits = quasi_greedy(q, A, o.n, o.precision);
  emit(Json{{"M", o.M}, {"q", io::base_json(q)}, {"n", o.n}, {"digits", format_word(digits, A)}});
  return 0;
}

int cmd_solve(const Options& o) {
  Alphabet A = alphabet_of(o);
  DigitSeq a = parse_seq(o.seq, A);
  Base q = solve_base(a, A);
  Json j{{"M", o.M}, {"seq", format_seq(a, A)}, {"base", io::base_json(q)}};
  if (!q.is_rational()) j["poly"] = j["base"]["poly"];
  emit(j);
  return 0;
}

int cmd_constants(const Options& o) {
  Alphabet A = alphabet_of(o);
  auto& catalog = ConstantCatalog::shared();
  Json ladder = Json::array();
  for (unsigned n = 1; n <= 5; ++n)
    ladder.push_back(Json{{"n", n}, {"alpha", format_seq(xi(A, n), A)}, {"q", io::base_json(catalog.xi_base(A, n))}});
  emit(Json{{"M", o.M},
            {"q_G", Json{{"alpha", format_seq(golden_expansion(A), A)}, {"q", io::base_json(golden_base(A))}}},
            {"q_NT", Json{{"alpha", format_seq(nontransitive_expansion(A), A)},
                          {"q", io::base_json(nontransitive_base(A))}}},
            {"q_T", Json{{"alpha", format_seq(transitive_expansion(A), A)}, {"q", io::base_json(transitive_base(A))}}},
            {"q_c", Json{{"lambda_prefix", format_word(lambda_prefix(A, 32), A)},
                         {"bracket", io::approx_json(catalog.critical(A).bracket)}}},
            {"q_T_ladder", ladder}});
  return 0;
}

Json sequence_report(const DigitSeq& a, Alphabet A, const Options& o) {
  Json j{{"seq", format_seq(a, A)},
         {"quasi_greedy_admissible", is_quasi_greedy_admissible(a, A)},
         {"class", io::class_json(classify_expansion(a, A))}};
  IrreducibleResult irr = is_irreducible(a, A, o.j_max);
  j["irreducible"] = irr.irreducible;
  if (irr.witness) j["irreducible_witness"] = *irr.witness;
  try {
    StarResult star = is_star_irreducible(a, A, o.j_max);
    j["star_irreducible"] = star.star_irreducible;
    j["xi_level"] = star.level;
    if (star.witness) j["star_witness"] = *star.witness;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInXiRange) throw;
    j["star_irreducible"] = false;
    j["xi_level"] = nullptr;
  }
  return j;
}

int cmd_classify(const Options& o) {
  Alphabet A = alphabet_of(o);
  const int given = !o.seq.empty() + !o.word.empty() + !o.q.empty();
  if (given != 1) throw CLI::ValidationError("classify", "give exactly one of --seq, --word, --q");
  Json j{{"M", o.M}};
  if (!o.word.empty()) {
    Word w = parse_word(o.word, A);
    j["word"] = format_word(w, A);
    j["primitive"] = is_primitive(w, A);
    auto why = generator_failure(w, A);
    j["generates_plateau"] = !why;
    if (why) j["not_generating_because"] = *why;
    if (o.rr_chain) {
      std::vector<Word> chain = reflection_chain(w, A);
      Json list = Json::array();
      std::string text;
      for (std::size_t i = 1; i < chain.size(); ++i) {
        list.push_back(format_word(chain[i], A));
        text += (i > 1 ? "," : "") + format_word(chain[i], A);
      }
      j["rr_chain"] = list;
      j["rr_chain_text"] = text;
    }
  } else if (!o.seq.empty()) {
    j.update(sequence_report(parse_seq(o.seq, A), A, o));
  } else {
    Base q = io::parse_base(o.q, A);
    BaseClass c = base_class(q, A, o.depth);
    j["q"] = io::base_json(q);
    j["prefix"] = format_word(c.prefix, A);
    j["certainty"] = certainty_name(c.certainty);
    j["class"] = io::class_json(c.membership);
    if (c.expansion) j["expansion"] = sequence_report(*c.expansion, A, o);
  }
  emit(j);
  return 0;
}

void require_seq_or_q(const Options& o, const char* command) {
  if (o.seq.empty() == o.q.empty()) throw CLI::ValidationError(command, "give exactly one of --seq, --q");
}

int cmd_entropy(const Options& o) {
  require_seq_or_q(o, "entropy");
  Alphabet A = alphabet_of(o);
  Json j{{"M", o.M}};
  if (!o.seq.empty()) {
    DigitSeq a = parse_seq(o.seq, A);
    j["seq"] = format_seq(a, A);
    j["entropy"] = io::entropy_json(entropy(ShiftSpec::of_expansion(a, A)));
  } else {
    Base q = io::parse_base(o.q, A);
    j["q"] = io::base_json(q);
    j["entropy"] = io::entropy_json(entropy_brackets(q, A, o.n));
  }
  emit(j);
  return 0;
}

int cmd_transitive(const Options& o) {
  require_seq_or_q(o, "transitive");
  Alphabet A = alphabet_of(o);
  std::optional<DigitSeq> a;
  Json j{{"M", o.M}};
  if (!o.seq.empty()) {
    a = parse_seq(o.seq, A);
  } else {
    Base q = io::parse_base(o.q, A);
    j["q"] = io::base_json(q);
    if (q == Rational(o.M + 1)) a = DigitSeq::constant(o.M);
    else a = exact_expansion(q, A, o.depth);
    if (!a) throw Error(ErrorKind::PrecisionExhausted, "alpha(q) is not recognized as eventually periodic");
  }
  MatchAutomaton aut = MatchAutomaton::build(ShiftSpec::of_expansion(*a, A));
  j["seq"] = format_seq(*a, A);
  j["transitive"] = is_transitive(aut);
  j["essential_strongly_connected"] = essential_part_strongly_connected(aut);
  j["states"] = aut.state_count();
  emit(j);
  return 0;
}

int cmd_plateaus(const Options& o) {
  Alphabet A = alphabet_of(o);
  std::vector<PlateauInterval> all = enumerate_plateaus(A, o.m_max);
  if (o.format == "csv") {
    std::cout << io::plateau_csv_header() << '\n';
    for (const auto& p : all) std::cout << io::plateau_csv_row(p, A) << '\n';
    return 0;
  }
  Json list = Json::array();
  for (const auto& p : all) list.push_back(io::plateau_json(p, A));
  emit(Json{{"M", o.M}, {"m_max", o.m_max}, {"count", all.size()}, {"plateaus", list}});
  return 0;
}

int cmd_locate(const Options& o) {
  Alphabet A = alphabet_of(o);
  Base q = io::parse_base(o.q, A);
  Json j{{"M", o.M}, {"q", io::base_json(q)}};
  j.update(io::locate_json(locate_plateau(q, A, o.depth), A));
  emit(j);
  return 0;
}

int cmd_dims(const Options& o) {
  Alphabet A = alphabet_of(o);
  if (!o.edim && o.q.empty()) throw CLI::ValidationError("dims", "give --q or --edim");
  if (o.edim) {
    emit(Json{{"M", o.M}, {"E_dim_lower_bound", io::edim_json(e_dim_lower_bound(A, *o.edim))}});
    return 0;
  }
  Base q = io::parse_base(o.q, A);
  emit(io::dims_json(box_count_check(q, A, o.n_max)));
  return 0;
}

int cmd_staircase(const Options& o) {
  Alphabet A = alphabet_of(o);
  Rational lo, hi;
  if (!parse_rational(o.q_lo, lo) || !parse_rational(o.q_hi, hi))
    throw Error(ErrorKind::ParseError, "q-lo and q-hi must be rationals or decimals");
  std::vector<PlateauInterval> catalog = enumerate_plateaus(A, o.m_max);
  std::cout << "q,H_lo,H_hi,plateau\n";
  for (const StaircaseRow& r : staircase(A, lo, hi, o.samples, o.n, catalog))
    std::cout << r.q.to_decimal(12) << ',' << io::csv_double(r.h.norm_lo) << ',' << io::csv_double(r.h.norm_hi) << ','
              << (r.plateau ? io::csv_quote(format_word(*r.plateau, A)) : "") << '\n';
  return 0;
}

int cmd_verify(const Options& o) {
  auto results = acceptance::run(std::cout, o.only);
  std::size_t failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Univoque bases, entropy plateaus and the bifurcation set"};
  app.require_subcommand(1);
  Options o;
  o.precision = precision_bits();  // 256 unless UNIVOQUE_PRECISION_BITS says otherwise

  auto common = [&](CLI::App* sub) {
    sub->add_option("--M", o.M, "largest digit")->check(CLI::PositiveNumber);
    sub->add_option("--precision", o.precision, "bit budget for exact digit decisions")->check(CLI::Range(16u, 1u << 20));
  };
  struct Sub {
    CLI::App* app;
    int (*run)(const Options&);
  };
  std::vector<Sub> subs;
  auto add = [&](const char* name, const char* help, int (*run)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    subs.push_back({sub, run});
    return sub;
  };

  auto* expand = add("expand", "first n digits of the quasi-greedy expansion alpha(q)", cmd_expand);
  expand->add_option("--q", o.q, "base: dec:…, poly:[…];(lo,hi], alpha:…, or a rational")->required();
  expand->add_option("--n", o.n, "number of digits");

  auto* solve = add("solve", "the base whose quasi-greedy expansion is the given sequence", cmd_solve);
  solve->add_option("--seq", o.seq, "sequence pre(per)")->required();

  add("constants", "q_G, q_NT, q_T, the q_T(n) ladder and a bracket for q_c", cmd_constants);

  auto* classify = add("classify", "classify a sequence, a word or a base", cmd_classify);
  classify->add_option("--seq", o.seq, "sequence pre(per)");
  classify->add_option("--word", o.word, "finite word");
  classify->add_option("--q", o.q, "base");
  classify->add_flag("--rr-chain", o.rr_chain, "print the reflection recurrence chain of --word");
  classify->add_option("--jmax", o.j_max, "bound for the j-quantified conditions");
  classify->add_option("--depth", o.depth, "digits of alpha(q) examined");

  auto* ent = add("entropy", "entropy of the shift bounded by a sequence, or a bracket at a base", cmd_entropy);
  auto* ent_seq = ent->add_option("--seq", o.seq, "upper bound alpha");
  auto* ent_q = ent->add_option("--q", o.q, "base");
  ent_seq->excludes(ent_q);
  ent->add_option("--n", o.n, "prefix length for non-periodic alpha(q)");

  auto* trans = add("transitive", "topological transitivity of the shift bounded by alpha", cmd_transitive);
  auto* tr_seq = trans->add_option("--seq", o.seq, "alpha");
  auto* tr_q = trans->add_option("--q", o.q, "base with eventually periodic alpha(q)");
  tr_seq->excludes(tr_q);
  trans->add_option("--depth", o.depth, "digits of alpha(q) examined");

  auto* plat = add("plateaus", "all entropy plateaus with generator length at most m-max", cmd_plateaus);
  plat->add_option("--m-max", o.m_max, "longest generator")->check(CLI::PositiveNumber);
  plat->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* loc = add("locate", "the plateau containing q, or its place in the bifurcation set", cmd_locate);
  loc->add_option("--q", o.q, "base")->required();
  loc->add_option("--depth", o.depth, "digits of alpha(q) examined");

  auto* dims = add("dims", "dim_H of the univoque set and box-count ratios", cmd_dims);
  auto* dims_q = dims->add_option("--q", o.q, "base");
  dims->add_option("--n-max", o.n_max, "largest box-count scale")->check(CLI::Range(2, 64));
  auto* dims_e = dims->add_option("--edim", o.edim, "report the bifurcation-set bound for this N instead");
  dims_q->excludes(dims_e);

  auto* stair = add("staircase", "CSV rows q,H_lo,H_hi,plateau for the devil's staircase", cmd_staircase);
  stair->add_option("--q-lo", o.q_lo, "left end")->required();
  stair->add_option("--q-hi", o.q_hi, "right end")->required();
  stair->add_option("--samples", o.samples, "grid points")->check(CLI::Range(2, 100000));
  stair->add_option("--n", o.n, "prefix length for brackets");
  stair->add_option("--m-max", o.m_max, "generator length of the plateau catalog");

  auto* verify = add("verify", "run the acceptance criteria", cmd_verify);
  verify->add_option("--only", o.only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  for (const Sub& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      return s.run(o);
    } catch (const CLI::ValidationError& e) {
      std::cerr << e.what() << '\n';
      return 1;
    } catch (const Error& e) {
      emit(Json{{"error", error_name(e.kind())}, {"message", e.what()}});
      return 2;
    }
  }
  return 1;
}
