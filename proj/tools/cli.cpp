#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "opetope/opetope.hpp"
#include "opetope/pasting.hpp"
#include "opetope/presentation.hpp"
#include "opetope/slice.hpp"
#include "opetope/symcat_checks.hpp"
#include "opetope/zeta.hpp"

namespace opetope::cli {

namespace {

struct RunConfig {
  std::optional<int> dim;
  int maxSize = 4;
  std::string route = "bd";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::optional<int> trials;
  std::string input;
  std::string monad = "zeta";
};

// Bad input files are usage errors.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Usage(path + ": " + e.what());
  }
}

int dimOr(const RunConfig& c, int fallback) { return c.dim.value_or(fallback); }

MulticatPtr multicatFor(const RunConfig& c) {
  if (c.input.empty()) return iteratedSlice(theMulticatI(), dimOr(c, 0));
  try {
    return buildMulticat(Presentation::fromJson(readJson(c.input)), c.input);
  } catch (const PresentationError& e) {
    throw Usage(e.what());
  }
}

MonadPtr monadFor(const RunConfig& c) {
  if (c.monad == "identity") return identityMonad({"pt"});
  if (c.monad == "free-monoid") return freeMonoidMonad();
  if (c.monad == "zeta") return zetaObj(multicatFor(c)).monad;
  if (c.monad == "leinster") return leinsterMonad(dimOr(c, 0));
  try {
    return monadFromJson(readJson(c.monad), c.monad);
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
}

MonadCheckConfig monadConfig(const RunConfig& c) {
  MonadCheckConfig m;
  m.sizeBound = c.maxSize;
  m.seed = c.seed;
  if (c.trials) m.trials = *c.trials;
  return m;
}

void printReport(const Report& r, const RunConfig& c, std::ostream& out) {
  if (c.format == "json") {
    out << r.toJson().dump(2) << "\n";
    return;
  }
  out << r.subject << "\n";
  for (const auto& res : r.results) {
    out << (res.ok ? "  ok   " : "  FAIL ") << res.check << " (" << res.cases << " cases)\n";
    for (const auto& w : res.counterexamples) out << "         " << w << "\n";
  }
}

std::vector<OpetopeCode> enumerateRoute(const std::string& route, int k, int n) {
  return route == "bd" ? bdOpetopes(k, n) : leinsterOpetopes(k, n);
}

int cmdEnumerate(const RunConfig& c, std::ostream& out) {
  if (!c.dim) {
    auto rows = countTable(4, c.maxSize);
    if (c.format == "json") {
      out << countTableToJson(rows).dump(2) << "\n";
    } else {
      for (const auto& r : rows) {
        out << "dim " << r.dim << "  bd";
        for (auto v : r.bd) out << " " << v;
        out << "  leinster";
        for (auto v : r.leinster) out << " " << v;
        out << "\n";
      }
    }
    return kOk;
  }
  std::vector<std::string> routes;
  if (c.route == "both")
    routes = {"bd", "leinster"};
  else
    routes = {c.route};
  nlohmann::json j = nlohmann::json::object();
  for (const auto& r : routes) {
    auto codes = enumerateRoute(r, *c.dim, c.maxSize);
    if (c.format == "json") {
      j[r] = opetopesToJson(*c.dim, codes, c.maxSize);
    } else {
      if (routes.size() > 1) out << "# " << r << "\n";
      for (const auto& code : codes) out << code.body << "\n";
    }
  }
  if (c.format == "json") out << j.dump(2) << "\n";
  return kOk;
}

Report runCheck(const std::string& which, const RunConfig& c) {
  if (which == "axioms") {
    AxiomCheckConfig a;
    a.seed = c.seed;
    if (c.trials) a.trials = *c.trials;
    a.exhaustiveSize = std::min(c.maxSize, 4);
    a.randomSize = c.maxSize;
    return checkAxioms(*multicatFor(c), a);
  }
  if (which == "laws") return checkMonadLaws(*monadFor(c), monadConfig(c));
  if (which == "cartesian") return checkCartesian(*monadFor(c), monadConfig(c));
  if (which == "suitable") return checkSuitable(*monadFor(c), 4, c.maxSize, c.seed);
  if (which == "iso") return comparisonIso(multicatFor(c), c.maxSize, monadConfig(c)).report;
  return checkOpetopeEquivalence(dimOr(c, 3), c.maxSize, monadConfig(c));
}

int cmdCheck(const std::string& which, const RunConfig& c, std::ostream& out) {
  std::vector<std::string> parts{which};
  if (which == "all") parts = {"axioms", "laws", "cartesian", "suitable", "iso", "equiv"};
  bool ok = true;
  if (parts.size() == 1) {
    Report r = runCheck(which, c);
    printReport(r, c, out);
    return r.ok() ? kOk : kCheckFailed;
  }
  nlohmann::json all = nlohmann::json::array();
  for (const auto& p : parts) {
    Report r = runCheck(p, c);
    ok = ok && r.ok();
    if (c.format == "json")
      all.push_back({{"check", p}, {"report", r.toJson()}});
    else
      printReport(r, c, out);
  }
  if (c.format == "json") out << all.dump(2) << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmdSlice(const RunConfig& c, std::ostream& out, std::ostream& err) {
  MulticatPtr q = multicatFor(c);
  std::shared_ptr<const Slice> plus;
  try {
    plus = slice(q);
  } catch (const NotTidy& e) {
    err << "cannot slice: " << e.what() << "\n";
    return kCheckFailed;
  }
  AxiomCheckConfig a;
  a.seed = c.seed;
  if (c.trials) a.trials = *c.trials;
  a.exhaustiveSize = std::min(c.maxSize, 3);
  a.randomSize = c.maxSize;
  Report r = checkAxioms(*q, a);
  if (!r.ok()) {
    const auto* f = r.firstFailure();
    err << "axiom failure: " << f->check << (f->counterexamples.empty() ? "" : ": " + f->counterexamples[0])
        << "\n";
    return kCheckFailed;
  }
  out << presentationOf(*plus, c.maxSize).toJson().dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opetopes by iterated slicing and by iterated free operads"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&c](CLI::App* s) {
    s->add_option("--dim", c.dim, "dimension")->check(CLI::NonNegativeNumber);
    s->add_option("--max-size", c.maxSize, "size bound")->check(CLI::NonNegativeNumber);
    s->add_option("--format", c.format, "json or ascii")->check(CLI::IsMember({"json", "ascii"}));
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--trials", c.trials, "random trials")->check(CLI::NonNegativeNumber);
    s->add_option("--input", c.input, "multicategory presentation (JSON)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "list opetopes, or the count table without --dim");
  common(enumerate);
  enumerate->add_option("--route", c.route, "bd, leinster or both")
      ->check(CLI::IsMember({"bd", "leinster", "both"}));

  auto* check = app.add_subcommand("check", "run verification checks");
  check->require_subcommand(1);
  std::string which;
  for (const char* name : {"axioms", "laws", "cartesian", "suitable", "iso", "equiv", "all"}) {
    auto* s = check->add_subcommand(name);
    common(s);
    s->add_option("--monad", c.monad, "identity, free-monoid, zeta, leinster or a JSON signature");
    s->callback([&which, name] { which = name; });
  }

  auto* sl = app.add_subcommand("slice", "slice a presentation (default: I)");
  common(sl);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (enumerate->parsed()) return cmdEnumerate(c, out);
    if (check->parsed()) return cmdCheck(which, c, out);
    return cmdSlice(c, out, err);
  } catch (const Usage& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const NotTidy& e) {
    err << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace opetope::cli
