// Copyright 2026 The pamon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <signal.h>

#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pamon/compiler/purpose.hpp"
#include "pamon/ltlf/parser.hpp"
#include "pamon/monitor/monitor.hpp"
#include "pamon/pep/http.hpp"
#include "pamon/pep/service.hpp"
#include "pamon/policy/trace_io.hpp"
#include "pamon/wsp/wsp.hpp"

namespace pamon {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// A line is either a request (its task is the only true atom) or an explicit
// letter such as `{a, b}` or `{}`.
ltlf::PropTrace read_prop_trace(const std::string& path) {
  std::istringstream in(read_text_file(path));
  ltlf::PropTrace t;
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    if (body.front() == '{') {
      if (body.back() != '}') throw Error(path + ":" + std::to_string(n) + ": unterminated letter");
      std::string inner = body.substr(1, body.size() - 2);
      for (auto& c : inner) {
        if (c == ',') c = ' ';
      }
      std::istringstream atoms(inner);
      ltlf::Letter l;
      for (std::string a; atoms >> a;) l.insert(a);
      t.push_back(std::move(l));
      continue;
    }
    const auto r = parse_request_line(line, n, path);
    if (r) t.push_back({r->task});
  }
  return t;
}

std::string format_letter(const ltlf::Letter& l) {
  std::string out = "{";
  for (const auto& a : l) out += (out.size() > 1 ? ", " : "") + a;
  return out + "}";
}

int cmd_eval(const std::string& formula, const std::string& trace, std::ostream& out) {
  const auto f = ltlf::parse(formula);
  const auto t = read_prop_trace(trace);
  // evaluate needs a position; the empty trace satisfies nothing here
  const bool sat = !t.empty() && ltlf::evaluate(f, t, 0);
  out << (sat ? "SAT" : "UNSAT") << '\n';
  return sat ? 0 : 1;
}

int cmd_check(const std::string& facts, const std::string& workflows, const std::string& purpose,
              const std::string& wid, std::ostream& out, std::ostream& err) {
  const Policy p = load_policy_file(facts, workflows);
  if (!p.has_purpose(purpose)) throw UnknownEntityError("purpose", purpose);
  const auto r = purpose_achievable(p, purpose, wid);
  out << (r.achievable ? "ACHIEVABLE" : "UNACHIEVABLE") << '\n';
  if (r.witness) {
    for (const auto& req : *r.witness) out << format_request(req) << '\n';
  }
  err << "states_explored " << r.stats.states_explored << "\nsubstitutions_tried " << r.stats.substitutions_tried
      << "\nwall_seconds " << r.stats.wall_seconds << '\n';
  if (r.substitution) {
    for (const auto& [var, subject] : *r.substitution) err << "substitution " << var << " " << subject << '\n';
  }
  return r.achievable ? 0 : 1;
}

int cmd_monitor(const std::string& facts, const std::string& workflows, const std::string& logdir, std::size_t cap,
                std::istream& in, std::ostream& out, std::ostream& err) {
  std::unique_ptr<Service> svc;
  SnapshotPtr snap;
  if (!logdir.empty()) {
    EngineConfig cfg;
    cfg.facts = facts;
    cfg.workflows = workflows.empty() ? std::filesystem::path(facts).parent_path().string() : workflows;
    if (cfg.workflows.empty()) cfg.workflows = ".";
    cfg.logdir = logdir;
    cfg.grounding_cap = cap;
    svc = std::make_unique<Service>(cfg);
    svc->replace_policy(read_text_file(facts));
  } else {
    snap = make_snapshot(load_policy_file(facts, workflows), 1, cap);
  }
  std::map<std::string, MonitorState> live;
  bool failed = false;
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    try {
      const auto r = parse_request_line(line, n, "<stdin>");
      if (!r) continue;
      StepResult res;
      if (svc) {
        res = svc->decide(*r).result;
      } else {
        check_declared(snap->policy(), *r);
        auto it = live.find(r->wid);
        if (it == live.end()) it = live.emplace(r->wid, init_instance(snap, r->purpose, r->wid)).first;
        res = step(it->second, *r);
      }
      out << to_string(res.decision) << ' ' << to_string(res.verdict) << (res.coarse ? " coarse" : "") << '\n';
    } catch (const Error& e) {
      out << "ERROR " << e.what() << '\n';
      err << "pamon: line " << n << ": " << e.what() << '\n';
      failed = true;
    }
    out.flush();
  }
  return failed ? 2 : 0;
}

int cmd_compile(const std::string& facts, const std::string& workflows, const std::string& purpose,
                const std::string& stage, const std::string& dot, std::ostream& out, std::ostream& err) {
  const Policy p = load_policy_file(facts, workflows);
  if (!p.has_purpose(purpose)) throw UnknownEntityError("purpose", purpose);
  SymbolicAutomaton a = build_pre_automaton(build_purpose_formula(p, purpose));
  if (stage == "specialized") a = specialize(a, p);
  const std::string text = to_dot(a);
  if (dot == "-") {
    out << text;
  } else {
    std::ofstream f(dot);
    if (!f || !(f << text)) throw Error("cannot write " + dot);
  }
  err << "states " << a.size() << "\nedges " << a.edge_count() << "\nacross_vars " << a.across_vars().size() << '\n';
  return 0;
}

int cmd_subpurpose(const std::string& of, const std::string& in_f, std::ostream& out) {
  const auto cex = sub_purpose_counterexample(ltlf::parse(of), ltlf::parse(in_f));
  if (!cex) {
    out << "SUBPURPOSE\n";
    return 0;
  }
  out << "NOT_SUBPURPOSE\n";
  for (const auto& l : cex->letters()) out << format_letter(l) << '\n';
  return 1;
}

int cmd_serve(const std::string& config, const std::string& bind, std::ostream& out, std::ostream& err) {
  EngineConfig cfg = load_config(config);
  if (!bind.empty()) {
    // reuse the config parser's checks for the override
    const EngineConfig b = parse_config(nlohmann::json{{"facts", "-"}, {"logdir", "-"}, {"bind", bind}}.dump());
    cfg.host = b.host;
    cfg.port = b.port;
  }
  // block the stop signals before any thread starts so sigwait sees them
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  Service svc(cfg);
  HttpServer http(svc, cfg.verbosity);
  const int port = http.bind(cfg.host, cfg.port);
  out << "listening " << cfg.host << ":" << port << std::endl;
  if (cfg.verbosity != Verbosity::Quiet) {
    err << "pamon: policy v" << svc.snapshot()->version() << ", " << svc.instances().size() << " instances replayed"
        << std::endl;
  }
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    http.stop();
  });
  http.listen();
  // listen() also returns on its own errors; wake the waiter either way
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"pamon: purpose-aware access control monitor"};
  app.require_subcommand(1);

  std::string formula, trace, facts, workflows, purpose, wid = "wid", logdir, stage = "pre", dot, of, in_f, config,
                                                  bind;
  std::size_t cap = kDefaultGroundingCap;

  auto* eval = app.add_subcommand("eval", "Evaluate an LTLf formula on a trace file");
  eval->add_option("--formula", formula, "LTLf formula")->required();
  eval->add_option("--trace", trace, "trace file: requests or {a, b} letters, one per line")->required();

  auto* check = app.add_subcommand("check", "Decide whether a purpose can be achieved");
  check->add_option("--facts", facts, "facts file")->required();
  check->add_option("--workflows", workflows, "workflow directory (default: next to the facts)");
  check->add_option("--purpose", purpose, "purpose to check")->required();
  check->add_option("--wid", wid, "instance id used in the witness");

  auto* monitor = app.add_subcommand("monitor", "Decide requests read from standard input");
  monitor->add_option("--facts", facts, "facts file")->required();
  monitor->add_option("--workflows", workflows, "workflow directory (default: next to the facts)");
  monitor->add_option("--logdir", logdir, "persist decisions to instance logs here");
  monitor->add_option("--grounding-cap", cap, "falsifiability search cap")->check(CLI::PositiveNumber);

  auto* compile = app.add_subcommand("compile", "Export a purpose automaton as DOT");
  compile->add_option("--facts", facts, "facts file")->required();
  compile->add_option("--workflows", workflows, "workflow directory (default: next to the facts)");
  compile->add_option("--purpose", purpose, "purpose to compile")->required();
  compile->add_option("--stage", stage, "pre or specialized")->check(CLI::IsMember({"pre", "specialized"}));
  compile->add_option("--dot", dot, "output file, - for standard output")->required();

  auto* subpurpose = app.add_subcommand("subpurpose", "Is F1 reached on every trace of F2?");
  subpurpose->add_option("--of", of, "candidate sub-purpose formula")->required();
  subpurpose->add_option("--in", in_f, "purpose formula")->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP enforcement service");
  serve->add_option("--config", config, "JSON config file")->required();
  serve->add_option("--bind", bind, "host:port, overrides the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(formula, trace, out);
    if (*check) return cmd_check(facts, workflows, purpose, wid, out, err);
    if (*monitor) return cmd_monitor(facts, workflows, logdir, cap, in, out, err);
    if (*compile) return cmd_compile(facts, workflows, purpose, stage, dot, out, err);
    if (*subpurpose) return cmd_subpurpose(of, in_f, out);
    if (*serve) return cmd_serve(config, bind, out, err);
  } catch (const std::exception& e) {
    err << "pamon: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace pamon
