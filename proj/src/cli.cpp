#include "freikalk/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freikalk/errors.hpp"
#include "freikalk/filtration.hpp"
#include "freikalk/fox.hpp"
#include "freikalk/freiheit.hpp"
#include "freikalk/jacobian.hpp"
#include "freikalk/magnus.hpp"
#include "freikalk/metab_ring.hpp"
#include "freikalk/oracle.hpp"
#include "freikalk/parser.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/schreier.hpp"
#include "freikalk/version.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Rendered {
  int code = 0;
  ordered_json bounds = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::string text;
};

// Truncation precedence: explicit flag, then FREIKALK_TRUNC, then default.
int resolve_trunc(int flag, bool given) {
  if (given) {
    if (flag < 1) throw PreconditionFailed("truncation must be at least 1");
    return flag;
  }
  if (const char* env = std::getenv("FREIKALK_TRUNC")) {
    std::string s(env);
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (...) {
      throw PreconditionFailed("FREIKALK_TRUNC must be a positive integer");
    }
    if (pos != s.size() || v < 1)
      throw PreconditionFailed("FREIKALK_TRUNC must be a positive integer");
    return v;
  }
  return kDefaultTrunc;
}

ordered_json factor_json(const RootFactor& f) {
  ordered_json j;
  j["relator"] = f.relator;
  j["sign"] = f.sign;
  j["conjugator"] = word_text(f.conjugator);
  return j;
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["word"] = word_text(w.word);
  j["level"] = ordered_json{{"k", w.level.k}, {"l", w.level.l}};
  j["class"] = w.word_class;
  ordered_json prod = ordered_json::array();
  for (const RootFactor& f : w.product) prod.push_back(factor_json(f));
  j["product"] = prod;
  j["residue"] = word_text(w.residue);
  return j;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Free: return "Free";
    case Outcome::NotFree: return "NotFree";
    default: return "Unknown";
  }
}

std::string conj_status_name(ConjugacyStatus s) {
  switch (s) {
    case ConjugacyStatus::witness: return "witness";
    case ConjugacyStatus::provably_none: return "provably-none";
    default: return "none-within-bounds";
  }
}

void emit(const Rendered& r, const std::string& sub, bool compact,
          const std::string& format, std::ostream& out) {
  if (format == "json") {
    ordered_json env;
    env["tool"] = "freikalk";
    env["version"] = kVersion;
    env["subcommand"] = sub;
    env["bounds"] = r.bounds;
    env["result"] = r.result;
    out << (compact ? env.dump() : env.dump(2)) << "\n";
  } else {
    out << r.text << "\n";
  }
}

int guarded(const std::function<Rendered()>& fn, const std::string& sub,
            bool compact, const std::string& format, std::ostream& out,
            std::ostream& err) {
  try {
    Rendered r = fn();
    emit(r, sub, compact, format, out);
    return r.code;
  } catch (const InternalInconsistency& e) {
    err << "freikalk: internal inconsistency: " << e.what() << "\n";
    return 4;
  } catch (const Inconclusive& e) {
    err << "freikalk: inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "freikalk: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "freikalk: unexpected failure: " << e.what() << "\n";
    return 4;
  }
}

// --word - switches to batch mode: one word per line on stdin, one result
// line each, worst exit code wins.
int run_maybe_batch(const std::string& word_opt,
                    const std::function<Rendered(const std::string&)>& handler,
                    const std::string& sub, const std::string& format,
                    std::ostream& out, std::ostream& err) {
  if (word_opt != "-")
    return guarded([&] { return handler(word_opt); }, sub, false, format, out, err);
  int worst = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string w = line.substr(begin, end - begin + 1);
    int code = guarded([&] { return handler(w); }, sub, true, format, out, err);
    worst = std::max(worst, code);
  }
  return worst;
}

// Truncation is resolved before the handler's error boundary is installed, so
// a bad flag or FREIKALK_TRUNC value must be mapped to the domain-error exit
// here instead of escaping run().
bool checked_trunc(int flag, const CLI::Option* opt, int& trunc, std::ostream& err) {
  try {
    trunc = resolve_trunc(flag, opt->count() > 0);
    return true;
  } catch (const Error& e) {
    err << "freikalk: " << e.what() << "\n";
    return false;
  }
}

std::vector<int> default_marked(int rank) {
  std::vector<int> m;
  for (int j = 1; j < rank; ++j) m.push_back(j);
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Fox calculus, rewriting and freeness tests for free groups"};
  app.name("freikalk");
  app.require_subcommand(0, 1);

  // derive
  auto* cmd_derive = app.add_subcommand("derive", "Fox derivative of a word");
  int d_rank = 0, d_wrt = 1;
  std::string d_word, d_format = "text";
  cmd_derive->add_option("--rank", d_rank, "alphabet size (0 = open)");
  cmd_derive->add_option("--word", d_word, "word, or - for stdin batch")->required();
  cmd_derive->add_option("--wrt", d_wrt, "generator index to derive by")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_derive->add_option("--format", d_format)->check(CLI::IsMember({"text", "json"}));

  // expand
  auto* cmd_expand = app.add_subcommand("expand", "truncated power-series expansion");
  int e_rank = 0, e_trunc = 0;
  std::string e_word, e_format = "text";
  cmd_expand->add_option("--rank", e_rank, "alphabet size (0 = open)");
  cmd_expand->add_option("--word", e_word, "word, or - for stdin batch")->required();
  auto* e_trunc_opt = cmd_expand->add_option("--trunc", e_trunc, "truncation degree");
  cmd_expand->add_option("--format", e_format)->check(CLI::IsMember({"text", "json"}));

  // weight
  auto* cmd_weight = app.add_subcommand("weight", "lower-central class of a word");
  int w_rank = 0, w_trunc = 0;
  std::string w_word, w_format = "text";
  cmd_weight->add_option("--rank", w_rank, "alphabet size (0 = open)");
  cmd_weight->add_option("--word", w_word, "word, or - for stdin batch")->required();
  auto* w_trunc_opt = cmd_weight->add_option("--trunc", w_trunc, "truncation degree");
  cmd_weight->add_option("--format", w_format)->check(CLI::IsMember({"text", "json"}));

  // rewrite
  auto* cmd_rewrite = app.add_subcommand("rewrite", "Schreier rewriting into the commutator subgroup base");
  int r_rank = 2;
  std::string r_word, r_format = "text";
  cmd_rewrite->add_option("--rank", r_rank, "ambient rank")->required()->check(CLI::Range(2, 64));
  cmd_rewrite->add_option("--word", r_word, "word in the commutator subgroup, or - for stdin batch")->required();
  cmd_rewrite->add_option("--format", r_format)->check(CLI::IsMember({"text", "json"}));

  // criterion
  auto* cmd_criterion = app.add_subcommand("criterion", "derivative membership criteria");
  int c_rank = 2, c_depth = 0, c_trunc = 0;
  std::vector<int> c_marked;
  std::string c_word, c_format = "text";
  cmd_criterion->add_option("--rank", c_rank, "ambient rank")->required()->check(CLI::Range(1, 64));
  cmd_criterion->add_option("--word", c_word, "word, or - for stdin batch")->required();
  cmd_criterion->add_option("--marked", c_marked, "marked generator indices")
      ->required()
      ->delimiter(',');
  cmd_criterion->add_option("--depth", c_depth,
                            "0: residue criterion over the abelian quotient; "
                            "n >= 1: relative criterion at filtration depth n");
  auto* c_trunc_opt = cmd_criterion->add_option("--trunc", c_trunc, "truncation degree");
  cmd_criterion->add_option("--format", c_format)->check(CLI::IsMember({"text", "json"}));

  // freiheit
  auto* cmd_freiheit = app.add_subcommand("freiheit", "one-relator freeness verdict");
  int f_rank = 3, f_trunc = 0, f_conj_len = 2, f_conj_norm = 2;
  long long f_samples = 10000;
  std::uint64_t f_seed = 1;
  std::vector<int> f_targets;
  std::string f_word, f_sig = "gamma2;m=[2]", f_format = "text";
  cmd_freiheit->add_option("--rank", f_rank, "ambient rank")->required()->check(CLI::Range(3, 64));
  cmd_freiheit->add_option("--word", f_word, "relator, or - for stdin batch")->required();
  cmd_freiheit->add_option("--signature", f_sig, "tower signature");
  cmd_freiheit->add_option("--targets", f_targets, "first-stage layers to witness")->delimiter(',');
  cmd_freiheit->add_option("--conj-len", f_conj_len, "conjugator word length bound");
  cmd_freiheit->add_option("--conj-norm", f_conj_norm, "transversal conjugator norm bound");
  cmd_freiheit->add_option("--samples", f_samples, "corroborating sample count");
  cmd_freiheit->add_option("--seed", f_seed, "sampling seed");
  auto* f_trunc_opt = cmd_freiheit->add_option("--trunc", f_trunc, "truncation degree");
  cmd_freiheit->add_option("--format", f_format)->check(CLI::IsMember({"text", "json"}));

  // gft
  auto* cmd_gft = app.add_subcommand("gft", "free generator selection below several relators");
  int g_rank = 3;
  std::string g_relators, g_format = "text";
  cmd_gft->add_option("--rank", g_rank, "ambient rank")->required()->check(CLI::Range(2, 64));
  cmd_gft->add_option("--relators", g_relators, "semicolon-separated relator list")->required();
  cmd_gft->add_option("--format", g_format)->check(CLI::IsMember({"text", "json"}));

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "sampling corroboration and criterion cross-validation");
  int v_rank = 3, v_level = 2, v_rounds = 25, v_conj_len = 3, v_factors = 2;
  long long v_samples = 1000;
  std::uint64_t v_seed = 1;
  std::vector<int> v_marked;
  std::string v_relators, v_format = "text";
  cmd_verify->add_option("--rank", v_rank, "ambient rank")->check(CLI::Range(2, 64));
  cmd_verify->add_option("--relators", v_relators, "semicolon-separated relator list");
  cmd_verify->add_option("--level", v_level, "kernel layer under test")->check(CLI::PositiveNumber);
  cmd_verify->add_option("--samples", v_samples, "sample count");
  cmd_verify->add_option("--seed", v_seed, "sampling seed");
  cmd_verify->add_option("--rounds", v_rounds, "cross-validation rounds");
  cmd_verify->add_option("--conj-len", v_conj_len, "conjugator length bound");
  cmd_verify->add_option("--factors", v_factors, "product factor bound");
  cmd_verify->add_option("--marked", v_marked, "marked generator indices")->delimiter(',');
  cmd_verify->add_option("--format", v_format)->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(cmd_derive)) {
    return run_maybe_batch(
        d_word,
        [&](const std::string& wtext) {
          Word w = parse_word(wtext, d_rank);
          RingElement dv = fox_derivative(w, d_wrt);
          Rendered r;
          r.bounds = ordered_json{{"rank", d_rank}};
          r.result = ordered_json{{"word", word_text(w)}, {"wrt", d_wrt}, {"derivative", dv.text()}};
          r.text = dv.text();
          return r;
        },
        "derive", d_format, out, err);
  }

  if (app.got_subcommand(cmd_expand)) {
    int trunc = 0;
    if (!checked_trunc(e_trunc, e_trunc_opt, trunc, err)) return 2;
    return run_maybe_batch(
        e_word,
        [&, trunc](const std::string& wtext) {
          Word w = parse_word(wtext, e_rank);
          TruncSeries s = expand(w, trunc);
          Rendered r;
          r.bounds = ordered_json{{"rank", e_rank}, {"trunc", trunc}};
          r.result = ordered_json{{"word", word_text(w)}, {"series", s.text()}};
          r.text = s.text();
          return r;
        },
        "expand", e_format, out, err);
  }

  if (app.got_subcommand(cmd_weight)) {
    int trunc = 0;
    if (!checked_trunc(w_trunc, w_trunc_opt, trunc, err)) return 2;
    return run_maybe_batch(
        w_word,
        [&, trunc](const std::string& wtext) {
          Word w = parse_word(wtext, w_rank);
          std::optional<int> cls = lcs_class(w, trunc);
          Rendered r;
          r.bounds = ordered_json{{"rank", w_rank}, {"trunc", trunc}};
          r.result = ordered_json{{"word", word_text(w)},
                                  {"class", cls ? ordered_json(*cls) : ordered_json(nullptr)},
                                  {"exact", cls.has_value()}};
          r.text = cls ? "class " + std::to_string(*cls)
                       : "class > " + std::to_string(trunc);
          return r;
        },
        "weight", w_format, out, err);
  }

  if (app.got_subcommand(cmd_rewrite)) {
    return run_maybe_batch(
        r_word,
        [&](const std::string& wtext) {
          Word w = parse_word(wtext, r_rank);
          SchreierSystem sys(r_rank, 2);
          Word sw = sys.rewrite(w);
          ordered_json symbols = ordered_json::array();
          std::vector<int> used;
          for (const Syllable& s : sw.syllables())
            if (std::find(used.begin(), used.end(), s.gen) == used.end()) used.push_back(s.gen);
          std::sort(used.begin(), used.end());
          for (int id : used) {
            auto [base, fiber] = sys.pair_of(id);
            ordered_json sj;
            sj["id"] = id;
            sj["base"] = word_text(base);
            sj["fiber"] = fiber;
            sj["spelled"] = word_text(sys.generator_word(id));
            symbols.push_back(sj);
          }
          Rendered r;
          r.bounds = ordered_json{{"rank", r_rank}};
          r.result = ordered_json{{"word", word_text(w)},
                                  {"rewritten", word_text(sw)},
                                  {"symbols", symbols}};
          r.text = word_text(sw);
          return r;
        },
        "rewrite", r_format, out, err);
  }

  if (app.got_subcommand(cmd_criterion)) {
    int trunc = 0;
    if (!checked_trunc(c_trunc, c_trunc_opt, trunc, err)) return 2;
    return run_maybe_batch(
        c_word,
        [&, trunc](const std::string& wtext) {
          Word w = parse_word(wtext, c_rank);
          Rendered r;
          if (c_depth >= 1) {
            bool ok = relative_criterion(w, c_marked, c_depth, trunc);
            r.bounds = ordered_json{{"rank", c_rank},
                                    {"marked", c_marked},
                                    {"depth", c_depth},
                                    {"trunc", trunc}};
            r.result = ordered_json{{"mode", "relative"}, {"word", word_text(w)}, {"passes", ok}};
            r.text = std::string("relative criterion at depth ") + std::to_string(c_depth) +
                     (ok ? ": pass" : ": fail");
          } else {
            QuotientSpec q{c_rank, 2};
            bool ok = residue_criterion(w, c_marked, q);
            ordered_json residues = ordered_json::array();
            for (int j = 1; j <= c_rank; ++j) {
              if (std::find(c_marked.begin(), c_marked.end(), j) != c_marked.end()) continue;
              CosetImage img = coset_map(fox_derivative(w, j), q);
              residues.push_back(ordered_json{{"wrt", j}, {"residue", img.text()}});
            }
            r.bounds = ordered_json{{"rank", c_rank}, {"marked", c_marked}};
            r.result = ordered_json{{"mode", "residue"},
                                    {"word", word_text(w)},
                                    {"passes", ok},
                                    {"residues", residues}};
            r.text = std::string("residue criterion") + (ok ? ": pass" : ": fail");
          }
          return r;
        },
        "criterion", c_format, out, err);
  }

  if (app.got_subcommand(cmd_freiheit)) {
    int trunc = 0;
    if (!checked_trunc(f_trunc, f_trunc_opt, trunc, err)) return 2;
    return run_maybe_batch(
        f_word,
        [&, trunc](const std::string& wtext) {
          ParsedSignature sig = parse_signature(f_sig);
          Word rel = parse_word(wtext, f_rank);
          SearchBounds b;
          b.conj_len = f_conj_len;
          b.conj_norm = f_conj_norm;
          b.oracle_samples = f_samples;
          b.oracle_seed = f_seed;
          b.trunc = trunc;
          std::vector<LevelIndex> targets;
          for (int l : f_targets) targets.push_back(LevelIndex{1, l});
          if (targets.empty()) {
            SchreierSystem probe(f_rank, sig.c);
            int i = locate_level(rel, sig, probe, b.trunc);
            targets.push_back(LevelIndex{1, i + 1});
          }
          Verdict v = freiheit_check(rel, f_rank, sig, targets, b);

          ordered_json conj;
          conj["status"] = conj_status_name(v.conj.status);
          conj["candidates_tried"] = v.conj.candidates_tried;
          if (!v.conj.reason.empty()) conj["reason"] = v.conj.reason;
          if (v.conj.witness) {
            conj["witness"] = ordered_json{
                {"conjugator", word_text(v.conj.witness->conjugator)},
                {"h", word_text(v.conj.witness->h)},
                {"residue", word_text(v.conj.witness->residue)}};
          }
          ordered_json witnesses = ordered_json::array();
          for (const Witness& w : v.witnesses) witnesses.push_back(witness_json(w));
          ordered_json unwitnessed = ordered_json::array();
          for (const LevelIndex& t : v.unwitnessed)
            unwitnessed.push_back(ordered_json{{"k", t.k}, {"l", t.l}});

          Rendered r;
          r.bounds = ordered_json{{"rank", f_rank},        {"signature", signature_text(sig)},
                                  {"conj_len", b.conj_len}, {"conj_norm", b.conj_norm},
                                  {"samples", b.oracle_samples}, {"seed", b.oracle_seed},
                                  {"trunc", b.trunc}};
          r.result = ordered_json{{"outcome", outcome_name(v.outcome)},
                                  {"level", v.level},
                                  {"provable", v.provable},
                                  {"conjugacy", conj},
                                  {"witnesses", witnesses},
                                  {"unwitnessed", unwitnessed},
                                  {"oracle", ordered_json{{"samples", v.oracle.samples},
                                                          {"subgroup_hits", v.oracle.subgroup_hits},
                                                          {"counterexamples", v.oracle.counterexamples}}}};
          r.text = outcome_name(v.outcome) + " (relator layer " + std::to_string(v.level) + ")";
          if (v.outcome == Outcome::NotFree && !v.witnesses.empty())
            r.text += ", witness " + word_text(v.witnesses.front().word);
          r.code = v.outcome == Outcome::Unknown ? 3 : 0;
          return r;
        },
        "freiheit", f_format, out, err);
  }

  if (app.got_subcommand(cmd_gft)) {
    return guarded(
        [&] {
          std::vector<Word> relators = parse_word_list(g_relators, g_rank);
          SchreierSystem sys(g_rank, 2);
          MetabRing ring(sys);
          SelectionReport rep = select_generators(relators, g_rank, ring);
          ordered_json rel = ordered_json::array();
          for (const Word& w : relators) rel.push_back(word_text(w));
          Rendered r;
          r.bounds = ordered_json{{"rank", g_rank}};
          r.result = ordered_json{{"relators", rel},
                                  {"t0", rep.t0},
                                  {"ts", rep.ts},
                                  {"pivot_columns", rep.pivot_columns},
                                  {"selected", rep.selected},
                                  {"p", static_cast<int>(rep.selected.size())}};
          std::string names;
          for (int j : rep.selected) names += (names.empty() ? "y" : " y") + std::to_string(j);
          r.text = "selected free generators: " + names + " (p = " +
                   std::to_string(rep.selected.size()) + ")";
          return r;
        },
        "gft", false, g_format, out, err);
  }

  if (app.got_subcommand(cmd_verify)) {
    return guarded(
        [&] {
          CrossValidationReport cv = cross_validate_criteria(v_seed, v_rounds);
          ordered_json cvj;
          cvj["relative_members"] = cv.relative_members;
          cvj["relative_non_members"] = cv.relative_non_members;
          cvj["residue_members"] = cv.residue_members;
          cvj["residue_non_members"] = cv.residue_non_members;
          cvj["disagreements"] = cv.disagreements;

          Rendered r;
          r.bounds = ordered_json{{"rank", v_rank},     {"level", v_level},
                                  {"samples", v_samples}, {"rounds", v_rounds},
                                  {"seed", v_seed},      {"conj_len", v_conj_len},
                                  {"factors", v_factors}};
          r.result["cross_validation"] = cvj;

          std::string falsify_text = "no falsification requested";
          if (!v_relators.empty()) {
            std::vector<Word> relators = parse_word_list(v_relators, v_rank);
            SchreierSystem sys(v_rank, 2);
            SampleSpec spec;
            spec.relators = relators;
            spec.rank = v_rank;
            spec.conj_len = v_conj_len;
            spec.factors = v_factors;
            spec.count = v_samples;
            spec.seed = v_seed;
            spec.level = LevelIndex{1, v_level};
            std::vector<int> marked = v_marked.empty() ? default_marked(v_rank) : v_marked;
            FalsifyReport fr = falsify_freedom(spec, marked, sys);
            ordered_json cj = ordered_json::array();
            for (const Word& w : fr.counterexamples) cj.push_back(word_text(w));
            r.result["falsification"] =
                ordered_json{{"samples", fr.samples},
                             {"subgroup_hits", fr.subgroup_hits},
                             {"marked", marked},
                             {"counterexamples", cj}};
            falsify_text = std::to_string(fr.samples) + " samples, " +
                           std::to_string(fr.subgroup_hits) + " subgroup hits, " +
                           std::to_string(fr.counterexamples.size()) + " counterexamples";
          } else {
            r.result["falsification"] = nullptr;
          }
          r.result["seeds"] = ordered_json{{"seed", v_seed}};

          r.text = "cross-validation: " +
                   std::to_string(cv.relative_members + cv.relative_non_members +
                                  cv.residue_members + cv.residue_non_members) +
                   " checks, " + std::to_string(cv.disagreements.size()) +
                   " disagreements; falsification: " + falsify_text;
          if (!cv.disagreements.empty())
            throw InternalInconsistency("criterion cross-validation found disagreements");
          return r;
        },
        "verify", false, v_format, out, err);
  }

  err << app.help();
  return 2;
}

}  // namespace freikalk
