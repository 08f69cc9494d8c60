#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "findep/ramsey.hpp"
#include "findep/report.hpp"

using namespace findep;

namespace {

struct Setup {
  RunConfig cfg;
  std::unique_ptr<IntegerTower> zt;
  std::unique_ptr<SanovTower> wt;
  Mode mode = Mode::RF;
};

Mode parse_mode(const std::string& m) {
  if (m == "RF" || m == "rf") return Mode::RF;
  if (m == "FREE" || m == "free") return Mode::FREE;
  if (m == "GENERIC" || m == "generic") return Mode::GENERIC;
  throw CLI::ValidationError("--mode must be RF, FREE or GENERIC");
}

Setup make_setup(const RunConfig& cfg) {
  Setup s;
  s.cfg = cfg;
  s.mode = parse_mode(cfg.mode);
  if (cfg.tower == "integer") {
    s.zt = std::make_unique<IntegerTower>(cfg.p, cfg.q, cfg.max_depth ? cfg.max_depth : 6);
    if (s.mode != Mode::RF)
      throw CLI::ValidationError("the integer tower supports RF mode only");
  } else if (cfg.tower == "sanov") {
    s.wt = std::make_unique<SanovTower>(cfg.p, cfg.max_depth ? cfg.max_depth : 4);
  } else {
    throw CLI::ValidationError("--tower must be integer or sanov");
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> read_problem_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string tok;
    if (ss >> tok) out.push_back(line);
  }
  return out;
}

std::vector<GenericBlock> parse_blocks(const std::vector<std::string>& lines,
                                       const QuotientTower<ReducedWord>& tower) {
  std::vector<GenericBlock> out;
  for (const std::string& line : lines) {
    std::istringstream ss(line);
    std::string kw;
    ss >> kw;
    if (kw != "block") throw std::runtime_error("expected 'block' line: " + line);
    int level;
    std::string rep;
    if (!(ss >> level >> rep)) throw std::runtime_error("malformed block line: " + line);
    GenericBlock b;
    b.coset = tower.project(rep == "e" ? ReducedWord(2) : parse(rep), level);
    std::string tok;
    while (ss >> tok) {
      if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
        throw std::runtime_error("constraint token must be +word or -word: " + tok);
      b.cs.add(tok[0] == '+' ? Polarity::must_start_with : Polarity::must_not_start_with,
               parse(tok.substr(1)));
    }
    out.push_back(std::move(b));
  }
  return out;
}

void emit(const RunConfig& cfg, const ReportDoc& doc, double seconds) {
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    out << doc.str();
    std::cout << "report written to " << cfg.out_path << "\n";
  } else {
    std::cout << doc.str();
  }
  std::cerr << "elapsed " << seconds << " s\n";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class E>
std::vector<E> parse_set(const std::string& csv);

template <>
std::vector<long long> parse_set<long long>(const std::string& csv) {
  std::vector<long long> out;
  for (const std::string& tok : split(csv, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::runtime_error("malformed integer element '" + tok + "'");
    }
  }
  return out;
}

template <>
std::vector<ReducedWord> parse_set<ReducedWord>(const std::string& csv) {
  std::vector<ReducedWord> out;
  for (const std::string& tok : split(csv, ',')) out.push_back(tok == "e" ? ReducedWord(2) : parse(tok));
  return out;
}

template <class E>
int run_check(const IndependenceEngine<E>& engine, const RunConfig& cfg, const std::string& set_csv) {
  Timer timer;
  const std::vector<E> M = parse_set<E>(set_csv);
  ExecPolicy pol{cfg.workers};
  const Verdict v = engine.is_independence_set(M, pol);
  // Witnesses must re-validate before they are reported.
  if (v.status == Verdict::Status::independent) {
    for (std::uint32_t mask = 0; mask < v.witnesses.size(); ++mask)
      if (!engine.validate(M, SignPattern::from_mask(mask, M.size()), v.witnesses[mask]))
        throw std::runtime_error("internal error: witness failed re-validation");
  }
  ReportDoc doc;
  echo_config(doc, cfg, "check");
  report_verdict(doc, M, v);
  emit(cfg, doc, timer.seconds());
  return v.status == Verdict::Status::independent ? 0 : 1;
}

template <class E>
int run_search(const IndependenceEngine<E>& engine, const RunConfig& cfg, const std::vector<E>& ball) {
  Timer timer;
  ExecPolicy pol{cfg.workers};
  SearchBudget budget;
  budget.max_checks = cfg.max_checks;
  const auto res = search_max(engine, ball, cfg.size_cap, budget, pol);
  ReportDoc doc;
  echo_config(doc, cfg, "search");
  doc.kv("radius", cfg.radius);
  report_search(doc, res, cfg.size_cap);
  emit(cfg, doc, timer.seconds());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-depth independence laboratory for boundary-and-tower systems"};
  app.set_config("--config", "", "read options from an INI/TOML file");

  RunConfig cfg;
  app.add_option("--tower", cfg.tower, "tower kind: integer | sanov")->capture_default_str();
  app.add_option("--p", cfg.p, "first prime")->capture_default_str();
  app.add_option("--q", cfg.q, "second prime (integer tower)")->capture_default_str();
  app.add_option("--max-depth", cfg.max_depth, "tower max depth (0: per-tower default)")
      ->capture_default_str();
  app.add_option("--depth", cfg.depth, "working depth N")->capture_default_str();
  app.add_option("--mode", cfg.mode, "target mode: RF | FREE | GENERIC")->capture_default_str();
  app.add_option("--radius", cfg.radius, "ball radius")->capture_default_str();
  app.add_option("--size-cap", cfg.size_cap, "largest set size the search attempts")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "rng seed; fixed seed gives byte-identical reports")
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads (0: all)")->capture_default_str();
  app.add_option("--max-checks", cfg.max_checks, "work budget in independence checks")
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "write the report to this file");

  std::string set_csv, problem_path, blocks_path, s1_text, s2_text, lemma_name, type_name;
  std::vector<long long> ramsey_args;
  std::uint64_t samples = 10000;
  int word_len = 14;
  app.add_option("--blocks", blocks_path, "GENERIC mode: block descriptions, one per line");

  auto* c_check = app.add_subcommand("check", "decide independence of a finite set");
  c_check->add_option("--set", set_csv, "comma-separated elements");
  c_check->add_option("--problem", problem_path, "file with one element per line");

  auto* c_search = app.add_subcommand("search", "maximum independence sets in a ball");

  auto* c_classify = app.add_subcommand("classify", "pair types of (s1, s2)");
  c_classify->add_option("--s1", s1_text)->required();
  c_classify->add_option("--s2", s2_text)->required();

  auto* c_verify = app.add_subcommand("verify", "lemma verifier");
  c_verify->add_option("name", lemma_name,
                       "rf1 | rf2 | free1 | free2 | free5 | free6 | free7 | tower")
      ->required();
  c_verify->add_option("--samples", samples, "sample count for randomized verifiers")
      ->capture_default_str();
  c_verify->add_option("--word-len", word_len, "word length budget")->capture_default_str();

  auto* c_bounds = app.add_subcommand("bounds", "all-one-type independence bound experiment");
  c_bounds->add_option("type", type_name, "A1..C3")->required();

  auto* c_ramsey = app.add_subcommand("ramsey", "multicolor Ramsey upper bound");
  c_ramsey->add_option("colors", ramsey_args, "clique sizes")->required();

  app.require_subcommand(1);
  for (auto* sub : {c_check, c_search, c_classify, c_verify, c_bounds, c_ramsey})
    sub->fallthrough();

  try {
    app.parse(argc, argv);

    if (c_ramsey->parsed()) {
      Timer timer;
      const BigInt r = ramsey_upper(ramsey_args);
      ReportDoc doc;
      doc.kv("command", "ramsey");
      std::string args;
      for (std::size_t i = 0; i < ramsey_args.size(); ++i)
        args += (i ? "," : "") + std::to_string(ramsey_args[i]);
      doc.kv("colors", args);
      doc.kv("upper_bound", r.str());
      emit(cfg, doc, timer.seconds());
      return 0;
    }

    Setup setup = make_setup(cfg);

    if (c_check->parsed()) {
      if (set_csv.empty() && !problem_path.empty()) {
        std::string joined;
        for (const auto& l : read_problem_lines(problem_path)) {
          std::istringstream ss(l);
          std::string tok;
          while (ss >> tok) joined += (joined.empty() ? "" : ",") + tok;
        }
        set_csv = joined;
      }
      if (set_csv.empty()) throw CLI::ValidationError("check needs --set or --problem");
      if (setup.zt) {
        IntEngine engine(*setup.zt, Mode::RF, cfg.depth);
        return run_check(engine, cfg, set_csv);
      }
      std::vector<GenericBlock> blocks;
      if (setup.mode == Mode::GENERIC)
        blocks = parse_blocks(read_problem_lines(blocks_path), *setup.wt);
      WordEngine engine(*setup.wt, setup.mode, cfg.depth, std::move(blocks));
      return run_check(engine, cfg, set_csv);
    }

    if (c_search->parsed()) {
      if (setup.zt) {
        IntEngine engine(*setup.zt, Mode::RF, cfg.depth);
        return run_search(engine, cfg, integer_ball(cfg.radius));
      }
      std::vector<GenericBlock> blocks;
      if (setup.mode == Mode::GENERIC)
        blocks = parse_blocks(read_problem_lines(blocks_path), *setup.wt);
      WordEngine engine(*setup.wt, setup.mode, cfg.depth, std::move(blocks));
      return run_search(engine, cfg, word_ball(static_cast<int>(cfg.radius)));
    }

    if (c_classify->parsed()) {
      if (!setup.wt) throw CLI::ValidationError("classify needs --tower sanov");
      Timer timer;
      const ReducedWord s1 = s1_text == "e" ? ReducedWord(2) : parse(s1_text);
      const ReducedWord s2 = s2_text == "e" ? ReducedWord(2) : parse(s2_text);
      const auto matches = classify_pair(*setup.wt, s1, s2, cfg.depth);
      ReportDoc doc;
      echo_config(doc, cfg, "classify");
      doc.kv("s1", s1_text);
      doc.kv("s2", s2_text);
      doc.kv("t", format(mul(s1, inv(s2))));
      doc.kv("matches", matches.size());
      for (std::size_t i = 0; i < matches.size(); ++i)
        doc.kv("match " + std::to_string(i), render(matches[i]));
      emit(cfg, doc, timer.seconds());
      return matches.empty() ? 1 : 0;
    }

    if (c_verify->parsed()) {
      Timer timer;
      ReportDoc doc;
      echo_config(doc, cfg, "verify");
      int rc = 0;
      if (lemma_name == "tower") {
        TowerReport rep;
        if (setup.zt) {
          std::vector<long long> sample;
          for (long long g = -50; g <= 50; ++g) sample.push_back(g * 7 + 3);
          rep = verify_tower(*setup.zt, setup.zt->max_depth(), sample);
        } else {
          rep = verify_tower(*setup.wt, setup.wt->max_depth(), word_ball(5));
        }
        for (const auto& c : rep.checks)
          doc.kv(c.axiom, std::string(c.pass ? "pass" : "FAIL") +
                              (c.detail.empty() ? "" : " (" + c.detail + ")"));
        rc = rep.all_pass() ? 0 : 1;
      } else {
        LemmaBudget budget;
        budget.depth = cfg.depth;
        budget.samples = samples;
        budget.word_len = word_len;
        budget.seed = cfg.seed;
        ExecPolicy pol{cfg.workers};
        const LemmaReport rep = verify_lemma(lemma_name, setup.zt.get(), setup.wt.get(), budget, pol);
        report_lemma(doc, rep);
        rc = rep.pass() ? 0 : 1;
      }
      emit(cfg, doc, timer.seconds());
      return rc;
    }

    if (c_bounds->parsed()) {
      if (!setup.wt) throw CLI::ValidationError("bounds needs --tower sanov");
      auto type = pair_type_from_string(type_name);
      if (!type) throw CLI::ValidationError("unknown pair type " + type_name);
      Timer timer;
      WordEngine engine(*setup.wt, Mode::FREE, cfg.depth);
      BoundBudget budget;
      budget.max_checks = cfg.max_checks;
      ExecPolicy pol{cfg.workers};
      const auto res = bound_experiment(engine, *type, static_cast<int>(cfg.radius), budget, pol);
      ReportDoc doc;
      echo_config(doc, cfg, "bounds");
      doc.kv("radius", cfg.radius);
      report_bounds(doc, res);
      emit(cfg, doc, timer.seconds());
      return res.below_bound ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
