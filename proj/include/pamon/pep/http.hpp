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


#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "pamon/pep/service.hpp"

namespace httplib {
class Server;
}

namespace pamon {

nlohmann::json to_json(const Request& r);
nlohmann::json to_json(const InstanceView& v);
nlohmann::json to_json(const AchievabilityResult& r);

/// Parses a request body: one JSON object with exactly the string fields
/// wid, subject, task, owner and purpose. Throws FieldError.
Request request_from_json(const std::string& body);

/// HTTP front end for a Service. Routes:
///
///   POST /v1/requests                 decide one request
///   GET  /v1/instances/{wid}          trace and verdict
///   POST /v1/instances/{wid}/close    close a satisfied instance
///   PUT  /v1/policy                   replace the facts (body is facts text)
///   GET  /v1/purposes/{p}/achievable  purpose achievability
///
/// Errors carry {"error": message} and, for field problems, "field" and
/// "value". Status codes: 400 malformed body or facts, 404 unknown instance
/// or purpose, 409 state conflict, 422 undeclared or invalid request field.
class HttpServer {
 public:
  HttpServer(Service& svc, Verbosity verbosity = Verbosity::Info);
  ~HttpServer();

  /// Returns the bound port; port 0 picks a free one. Throws Error on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call bind() first.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  Service& svc_;
  Verbosity verbosity_;
  std::unique_ptr<httplib::Server> srv_;
};

}  // namespace pamon
