#include "uag/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "uag/report.hpp"

namespace uag::cli {

namespace {

struct Session {
  std::string model_path;
  int point_budget = kDefaultPointBudget;
  bool json = false;
  std::string out_path;

  std::string model_text;
  ModelFile model;

  void load_model() {
    std::ifstream in(model_path, std::ios::binary);
    if (!in)
      throw Error(ErrorKind::unknown_name, "cannot open model file '" + model_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    model_text = buf.str();
    model = parse_model(model_text);
  }

  Json input_entry(const char* kind, const std::string& name, const std::string& text) const {
    Json e;
    e["kind"] = kind;
    e["name"] = name;
    e["hash"] = content_hash(text);
    return e;
  }

  Json model_input() const { return input_entry("model", model_path, model_text); }
  Json algebra_input(const std::string& name) const {
    return input_entry("algebra", name, render_algebra(name, *model.require_algebra(name)));
  }
  Json system_input(const std::string& name) const {
    return input_entry("system", name, render_system(model.require_system(name)));
  }
  Json words_input(const std::string& name) const {
    return input_entry("words", name, render_word_system(model.require_word_system(name)));
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int resolve_budget_default() {
  if (const char* env = std::getenv("UAG_POINT_BUDGET")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return kDefaultPointBudget;
}

void emit(const Session& s, const Json& report, std::ostream& out) {
  std::string text = render_report(report);
  if (!s.out_path.empty()) {
    std::ofstream f(s.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::unknown_name, "cannot write '" + s.out_path + "'");
    f << text;
  } else {
    out << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session;
  session.point_budget = resolve_budget_default();

  CLI::App app{"finite-scale universal algebraic geometry workbench", "uag"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--model", session.model_path, "model file (.uag)");
  app.add_option("--point-budget", session.point_budget,
                 "largest allowed |H|^rank point count");
  app.add_flag("--json", session.json, "emit a JSON report");
  app.add_option("--out", session.out_path, "write the report to a file");

  std::string arg_algebra, arg_system, arg_a, arg_b, arg_words, arg_h0, arg_t1, arg_t2;
  std::string arg_images, arg_gen_images;
  int arg_rank = 1, arg_max_rank = 1, arg_max_depth = 1;
  bool assume_applicable = false;

  auto* cmd_closure = app.add_subcommand("closure", "algebraic closure of an equation system");
  cmd_closure->add_option("--algebra", arg_algebra)->required();
  cmd_closure->add_option("--system", arg_system)->required();

  auto* cmd_closed = app.add_subcommand("closed-sets", "enumerate all closed congruences");
  cmd_closed->add_option("--algebra", arg_algebra)->required();
  cmd_closed->add_option("--rank", arg_rank)->required();

  auto* cmd_free = app.add_subcommand("free", "relatively free algebra of Var(H)");
  cmd_free->add_option("--algebra", arg_algebra)->required();
  cmd_free->add_option("--rank", arg_rank)->required();

  auto* cmd_geomeq = app.add_subcommand("geomeq", "geometric equivalence up to a rank");
  cmd_geomeq->add_option("--a", arg_a)->required();
  cmd_geomeq->add_option("--b", arg_b)->required();
  cmd_geomeq->add_option("--max-rank", arg_max_rank)->required();

  auto* cmd_derive = app.add_subcommand("derive", "derived algebra under a word system");
  cmd_derive->add_option("--algebra", arg_algebra)->required();
  cmd_derive->add_option("--words", arg_words)->required();

  auto* cmd_applicable = app.add_subcommand("applicable", "applicability evidence for a word system");
  cmd_applicable->add_option("--h0", arg_h0)->required();
  cmd_applicable->add_option("--words", arg_words)->required();
  cmd_applicable->add_option("--max-rank", arg_max_rank)->required();

  auto* cmd_autoeq = app.add_subcommand("autoeq", "automorphic equivalence through a word system");
  cmd_autoeq->add_option("--a", arg_a)->required();
  cmd_autoeq->add_option("--b", arg_b)->required();
  cmd_autoeq->add_option("--words", arg_words)->required();
  cmd_autoeq->add_option("--max-rank", arg_max_rank)->required();
  cmd_autoeq->add_flag("--assume-applicable", assume_applicable);
  cmd_autoeq->add_option("--h0", arg_h0);

  auto* cmd_inner = app.add_subcommand("inner-search", "search for an inner-automorphism witness");
  cmd_inner->add_option("--h0", arg_h0)->required();
  cmd_inner->add_option("--words", arg_words)->required();
  cmd_inner->add_option("--max-rank", arg_max_rank)->required();
  cmd_inner->add_option("--max-depth", arg_max_depth)->required();

  auto* cmd_checkhom = app.add_subcommand("check-hom", "is a term morphism a morphism of closed congruences");
  cmd_checkhom->add_option("--algebra", arg_algebra)->required();
  cmd_checkhom->add_option("--t1", arg_t1)->required();
  cmd_checkhom->add_option("--t2", arg_t2)->required();
  cmd_checkhom->add_option("--images", arg_images, "semicolon-separated image terms")->required();

  auto* cmd_lift = app.add_subcommand("lift", "lift a quotient homomorphism to a term morphism");
  cmd_lift->add_option("--algebra", arg_algebra)->required();
  cmd_lift->add_option("--t1", arg_t1)->required();
  cmd_lift->add_option("--t2", arg_t2)->required();
  cmd_lift->add_option("--gen-images", arg_gen_images, "comma-separated target element indices")->required();

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("uag");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (session.model_path.empty()) {
    err << "usage error: --model is required\n";
    return kExitUsage;
  }

  auto started = std::chrono::steady_clock::now();
  std::string command = app.get_subcommands().front()->get_name();
  Json report;
  report["command"] = command;
  int exit_code = kExitTrue;

  auto finish = [&](Json& r) {
    auto elapsed = std::chrono::steady_clock::now() - started;
    r["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    emit(session, r, out);
  };

  try {
    session.load_model();
    Json args_echo;
    Json inputs = Json::array();
    inputs.push_back(session.model_input());
    Json data;

    if (cmd_closure->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["system"] = arg_system;
      inputs.push_back(session.algebra_input(arg_algebra));
      inputs.push_back(session.system_input(arg_system));
      auto h = session.model.require_algebra(arg_algebra);
      const auto& sys = session.model.require_system(arg_system);
      if (!(*sys.signature == h->signature()))
        fail(ErrorKind::signature_mismatch, "system and algebra signatures differ");
      ClosedCongruence t = closure(h, sys.system, session.point_budget);
      data["points"] = json_point_set(t.base());
      data["coordinate_size"] = t.coordinate()->size();
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["data"] = data;
    } else if (cmd_closed->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["rank"] = arg_rank;
      inputs.push_back(session.algebra_input(arg_algebra));
      auto h = session.model.require_algebra(arg_algebra);
      auto list = enumerate_closed(h, GeneratorSet{arg_rank}, session.point_budget);
      data["count"] = list.size();
      Json sets = Json::array();
      for (const auto& t : list) sets.push_back(json_point_set(t.base()));
      data["sets"] = std::move(sets);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["data"] = data;
    } else if (cmd_free->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["rank"] = arg_rank;
      inputs.push_back(session.algebra_input(arg_algebra));
      auto h = session.model.require_algebra(arg_algebra);
      auto free = relatively_free(h, GeneratorSet{arg_rank}, session.point_budget);
      data["size"] = free->size();
      data["generators"] = free->generator_images;
      Json witnesses = Json::array();
      for (int e = 0; e < free->size(); ++e)
        witnesses.push_back(to_string(free->witness(e), h->signature()));
      data["witnesses"] = std::move(witnesses);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["data"] = data;
    } else if (cmd_geomeq->parsed()) {
      args_echo["a"] = arg_a;
      args_echo["b"] = arg_b;
      args_echo["max_rank"] = arg_max_rank;
      inputs.push_back(session.algebra_input(arg_a));
      inputs.push_back(session.algebra_input(arg_b));
      auto h1 = session.model.require_algebra(arg_a);
      auto h2 = session.model.require_algebra(arg_b);
      GeomVerdict v = geom_equiv(h1, h2, arg_max_rank, session.point_budget);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      Json jv = json_geom_verdict(v);
      for (auto& [k, val] : jv.items()) report[k] = val;
      exit_code = v.equivalent_up_to_rank ? kExitTrue : kExitFalse;
    } else if (cmd_derive->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["words"] = arg_words;
      inputs.push_back(session.algebra_input(arg_algebra));
      inputs.push_back(session.words_input(arg_words));
      auto h = session.model.require_algebra(arg_algebra);
      const auto& w = session.model.require_word_system(arg_words);
      FiniteAlgebra derived = derive_algebra(*h, w);
      data["algebra"] = json_algebra(derived);
      data["text"] = render_algebra(arg_algebra + "_" + arg_words, derived);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["data"] = data;
    } else if (cmd_applicable->parsed()) {
      args_echo["h0"] = arg_h0;
      args_echo["words"] = arg_words;
      args_echo["max_rank"] = arg_max_rank;
      inputs.push_back(session.algebra_input(arg_h0));
      inputs.push_back(session.words_input(arg_words));
      auto h0 = session.model.require_algebra(arg_h0);
      const auto& w = session.model.require_word_system(arg_words);
      ApplicabilityReport r = check_applicable_rel(h0, w, arg_max_rank, session.point_budget);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      bool all_iso = r.iso_up_to(arg_max_rank);
      report["verdict"] = all_iso;
      report["data"] = json_applicability(r);
      exit_code = all_iso ? kExitTrue : kExitFalse;
    } else if (cmd_autoeq->parsed()) {
      args_echo["a"] = arg_a;
      args_echo["b"] = arg_b;
      args_echo["words"] = arg_words;
      args_echo["max_rank"] = arg_max_rank;
      inputs.push_back(session.algebra_input(arg_a));
      inputs.push_back(session.algebra_input(arg_b));
      inputs.push_back(session.words_input(arg_words));
      auto h1 = session.model.require_algebra(arg_a);
      auto h2 = session.model.require_algebra(arg_b);
      const auto& w = session.model.require_word_system(arg_words);
      ApplicabilityBasis basis;
      if (assume_applicable) {
        basis = ApplicabilityBasis::user_asserted();
        args_echo["basis"] = "user_asserted";
      } else if (!arg_h0.empty()) {
        inputs.push_back(session.algebra_input(arg_h0));
        auto h0 = session.model.require_algebra(arg_h0);
        basis = ApplicabilityBasis::relative(
            check_applicable_rel(h0, w, arg_max_rank, session.point_budget));
        args_echo["basis"] = "relative_evidence";
        args_echo["h0"] = arg_h0;
      } else {
        fail(ErrorKind::missing_basis,
             "autoeq needs --assume-applicable or --h0 H0 for applicability evidence");
      }
      report["args"] = args_echo;
      AutoEqVerdict v = auto_equiv(h1, h2, w, arg_max_rank, std::move(basis), session.point_budget);
      report["inputs"] = inputs;
      Json jv = json_auto_verdict(v);
      for (auto& [k, val] : jv.items()) report[k] = val;
      exit_code = v.verdict ? kExitTrue : kExitFalse;
    } else if (cmd_inner->parsed()) {
      args_echo["h0"] = arg_h0;
      args_echo["words"] = arg_words;
      args_echo["max_rank"] = arg_max_rank;
      args_echo["max_depth"] = arg_max_depth;
      inputs.push_back(session.algebra_input(arg_h0));
      inputs.push_back(session.words_input(arg_words));
      auto h0 = session.model.require_algebra(arg_h0);
      const auto& w = session.model.require_word_system(arg_words);
      auto witness = inner_search(h0, w, arg_max_rank, arg_max_depth, session.point_budget);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["verdict"] = witness.has_value();
      if (witness) {
        data["witness"] = to_string(witness->c, h0->signature());
        data["verified_ranks"] = witness->verified_ranks;
        report["data"] = data;
      }
      exit_code = witness ? kExitTrue : kExitFalse;
    } else if (cmd_checkhom->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["t1"] = arg_t1;
      args_echo["t2"] = arg_t2;
      args_echo["images"] = arg_images;
      inputs.push_back(session.algebra_input(arg_algebra));
      inputs.push_back(session.system_input(arg_t1));
      inputs.push_back(session.system_input(arg_t2));
      auto h = session.model.require_algebra(arg_algebra);
      const auto& s1 = session.model.require_system(arg_t1);
      const auto& s2 = session.model.require_system(arg_t2);
      ClosedCongruence t1 = closure(h, s1.system, session.point_budget);
      ClosedCongruence t2 = closure(h, s2.system, session.point_budget);
      TermMorphism m{s1.system.generators.rank, s2.system.generators.rank, {}};
      for (const auto& part : split(arg_images, ';'))
        m.images.push_back(parse_term(part, h->signature(), m.target_rank));
      bool ok = is_cl_morphism(m, t1, t2);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["verdict"] = ok;
      exit_code = ok ? kExitTrue : kExitFalse;
    } else if (cmd_lift->parsed()) {
      args_echo["algebra"] = arg_algebra;
      args_echo["t1"] = arg_t1;
      args_echo["t2"] = arg_t2;
      args_echo["gen_images"] = arg_gen_images;
      inputs.push_back(session.algebra_input(arg_algebra));
      inputs.push_back(session.system_input(arg_t1));
      inputs.push_back(session.system_input(arg_t2));
      auto h = session.model.require_algebra(arg_algebra);
      const auto& s1 = session.model.require_system(arg_t1);
      const auto& s2 = session.model.require_system(arg_t2);
      ClosedCongruence t1 = closure(h, s1.system, session.point_budget);
      ClosedCongruence t2 = closure(h, s2.system, session.point_budget);
      std::vector<int> gens;
      for (const auto& part : split(arg_gen_images, ',')) {
        try {
          gens.push_back(std::stoi(part));
        } catch (...) {
          fail(ErrorKind::unknown_name, "--gen-images expects comma-separated element indices");
        }
      }
      QuotientHom qh = quotient_hom_from_generators(t1.coordinate(), t2.coordinate(), gens);
      TermMorphism m = lift_hom(qh);
      Json images = Json::array();
      for (const auto& img : m.images) images.push_back(to_string(img, h->signature()));
      data["images"] = std::move(images);
      report["args"] = args_echo;
      report["inputs"] = inputs;
      report["data"] = data;
    }

    finish(report);
    return exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    if (session.json) {
      Json r;
      r["command"] = command;
      r["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      finish(r);
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    if (session.json) {
      Json r;
      r["command"] = command;
      r["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      finish(r);
    }
    return e.kind() == ErrorKind::unknown_name ? kExitUsage : kExitSemantic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace uag::cli
