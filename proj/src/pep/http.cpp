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


#include "pamon/pep/http.hpp"

#include <chrono>
#include <iostream>
#include <mutex>

#include <httplib.h>

namespace pamon {

using nlohmann::json;

json to_json(const Request& r) {
  return {{"wid", r.wid}, {"subject", r.subject}, {"task", r.task}, {"owner", r.owner}, {"purpose", r.purpose}};
}

json to_json(const InstanceView& v) {
  json trace = json::array();
  for (const auto& r : v.trace) trace.push_back(to_json(r));
  json out = {{"wid", v.wid},         {"purpose", v.purpose}, {"trace", trace},
              {"verdict", to_string(v.verdict)}, {"frozen", v.frozen}, {"version", v.version}};
  if (v.coarse) out["coarse"] = true;
  return out;
}

json to_json(const AchievabilityResult& r) {
  json out = {{"achievable", r.achievable},
              {"stats",
               {{"states_explored", r.stats.states_explored},
                {"substitutions_tried", r.stats.substitutions_tried},
                {"wall_seconds", r.stats.wall_seconds}}}};
  if (r.witness) {
    json w = json::array();
    for (const auto& req : *r.witness) w.push_back(to_json(req));
    out["witness"] = w;
  }
  if (r.substitution) out["substitution"] = *r.substitution;
  return out;
}

Request request_from_json(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw FieldError("", "", std::string("body is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FieldError("", "", "body must be a JSON object");
  static const char* const fields[] = {"wid", "subject", "task", "owner", "purpose"};
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* f : fields) known = known || k == f;
    if (!known) throw FieldError(k, "", "unexpected field '" + k + "'");
  }
  std::string values[5];
  for (int i = 0; i < 5; ++i) {
    if (!j.contains(fields[i])) throw FieldError(fields[i], "", std::string("missing field '") + fields[i] + "'");
    const auto& v = j.at(fields[i]);
    if (!v.is_string()) throw FieldError(fields[i], v.dump(), std::string("field '") + fields[i] + "' must be a string");
    values[i] = v.get<std::string>();
  }
  return {values[0], values[1], values[2], values[3], values[4]};
}

namespace {

std::mutex log_mu;

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

json error_body(const std::string& msg) { return {{"error", msg}}; }

json error_body(const std::string& msg, const std::string& field, const std::string& value) {
  return {{"error", msg}, {"field", field}, {"value", value}};
}

// Maps the service's exceptions onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const FieldError& e) {
    reply(res, 422, error_body(e.what(), e.field(), e.value()));
  } catch (const UnknownEntityError& e) {
    reply(res, 422, error_body(e.what(), e.field(), e.value()));
  } catch (const NotFoundError& e) {
    reply(res, 404, error_body(e.what()));
  } catch (const MonitorError& e) {
    reply(res, 409, error_body(e.what()));
  } catch (const PolicyError& e) {
    reply(res, 400, error_body(e.what()));
  } catch (const std::exception& e) {
    reply(res, 500, error_body(e.what()));
  }
}

}  // namespace

HttpServer::HttpServer(Service& svc, Verbosity verbosity)
    : svc_(svc), verbosity_(verbosity), srv_(std::make_unique<httplib::Server>()) {
  srv_->Post("/v1/requests", [this](const httplib::Request& req, httplib::Response& res) {
    Request r;
    try {
      r = request_from_json(req.body);
    } catch (const FieldError& e) {
      reply(res, 400, e.field().empty() ? error_body(e.what()) : error_body(e.what(), e.field(), e.value()));
      return;
    }
    guarded(res, [&] {
      const Decided d = svc_.decide(r);
      json out = {{"seq", d.seq},
                  {"decision", to_string(d.result.decision)},
                  {"verdict", to_string(d.result.verdict)},
                  {"version", d.version}};
      if (d.result.coarse) out["coarse"] = true;
      reply(res, 200, out);
    });
  });
  srv_->Get(R"(/v1/instances/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, to_json(svc_.instance(req.matches[1]))); });
  });
  srv_->Post(R"(/v1/instances/([^/]+)/close)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, to_json(svc_.close(req.matches[1]))); });
  });
  srv_->Put("/v1/policy", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, {{"version", svc_.replace_policy(req.body)}}); });
  });
  srv_->Get(R"(/v1/purposes/([^/]+)/achievable)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string purpose = req.matches[1];
      if (!svc_.snapshot()->policy().has_purpose(purpose)) throw NotFoundError("unknown purpose '" + purpose + "'");
      reply(res, 200, to_json(svc_.achievable(purpose)));
    });
  });
  srv_->set_payload_max_length(16 << 20);
  if (verbosity_ != Verbosity::Quiet) {
    srv_->set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      std::lock_guard lock(log_mu);
      std::cerr << "pamon: " << req.method << ' ' << req.path << ' ' << res.status << '\n';
      if (verbosity_ == Verbosity::Debug) std::cerr << "  < " << req.body << "\n  > " << res.body;
    });
  }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int p = srv_->bind_to_any_port(host);
    if (p <= 0) throw Error("cannot bind " + host);
    return p;
  }
  if (!srv_->bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { srv_->listen_after_bind(); }

void HttpServer::stop() { srv_->stop(); }

void HttpServer::wait_until_ready() const { srv_->wait_until_ready(); }

}  // namespace pamon
