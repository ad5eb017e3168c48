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

#include "pamon/monitor/log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <vector>

#include "pamon/policy/trace_io.hpp"

namespace pamon {

namespace fs = std::filesystem;

bool valid_wid(const std::string& wid) {
  if (wid.empty() || wid[0] == '.') return false;
  for (unsigned char c : wid) {
    if (!std::isalnum(c) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

std::string log_path(const std::string& dir, const std::string& wid) {
  if (!valid_wid(wid)) throw Error("invalid instance id '" + wid + "'");
  return (fs::path(dir) / (wid + ".log")).string();
}

std::string format_grant(const Request& r, const StepResult& res, std::uint64_t version) {
  std::string line = format_request(r) + " # GRANT " + to_string(res.verdict) + " v" + std::to_string(version);
  if (res.coarse) line += " coarse";
  return line;
}

std::string format_deny(const Request& r, std::uint64_t version) {
  return "# DENY " + format_request(r) + " false v" + std::to_string(version);
}

std::string format_close(std::uint64_t version) { return "# CLOSE v" + std::to_string(version); }

InstanceLog::InstanceLog(std::string path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("cannot open log " + path_ + ": " + std::strerror(errno));
}

InstanceLog::~InstanceLog() {
  if (fd_ >= 0) ::close(fd_);
}

void InstanceLog::append(const std::string& line) {
  const std::string data = line + "\n";
  std::size_t done = 0;
  while (done < data.size()) {
    const auto n = ::write(fd_, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error("cannot write log " + path_ + ": " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw Error("cannot sync log " + path_ + ": " + std::strerror(errno));
}

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::uint64_t parse_version(const std::string& w) {
  if (w.size() < 2 || w[0] != 'v') throw Error("expected a version like v1, got '" + w + "'");
  std::uint64_t v = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) throw Error("bad version '" + w + "'");
    v = v * 10 + static_cast<std::uint64_t>(w[i] - '0');
  }
  return v;
}

Request request_of(const std::vector<std::string>& w, std::size_t from) {
  if (w.size() < from + 5) throw Error("truncated request");
  return {w[from], w[from + 1], w[from + 2], w[from + 3], w[from + 4]};
}

}  // namespace

Replay replay_log(const std::string& path, const SnapshotPtr& snap) {
  const std::string text = read_text_file(path);
  Replay out;
  const std::string wid = fs::path(path).stem().string();
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto ensure = [&](const Request& r) -> MonitorState& {
    if (r.wid != wid) throw Error("request for instance " + r.wid + " in the log of " + wid);
    if (!out.state) out.state = init_instance(snap, r.purpose, wid);
    return *out.state;
  };
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      out.torn = true;
      break;
    }
    const std::string line = text.substr(pos, nl - pos);
    ++line_no;
    try {
      if (out.state && out.state->frozen()) throw Error("entry after close");
      const auto w = words(line);
      if (w.empty()) throw Error("blank line");
      if (w[0] == "#") {
        if (w.size() == 3 && w[1] == "CLOSE") {
          if (!out.state) throw Error("close before any request");
          if (parse_version(w[2]) == snap->version()) {
            close_instance(*out.state);
          } else {
            freeze(*out.state);
          }
        } else if (w.size() == 9 && w[1] == "DENY") {
          const Request r = request_of(w, 2);
          if (w[7] != "false") throw Error("denied request recorded with verdict " + w[7]);
          const auto v = parse_version(w[8]);
          if (v > snap->version()) throw Error("entry from a newer policy version");
          MonitorState& s = ensure(r);
          if (v == snap->version()) {
            MonitorState copy = s;
            const auto res = step(copy, r);
            if (res.decision != Decision::Deny) throw Error("recorded DENY but replay grants");
          }
        } else {
          throw Error("unrecognized entry");
        }
      } else {
        if (w.size() < 9 || w.size() > 10 || w[5] != "#" || w[6] != "GRANT") throw Error("unrecognized entry");
        const Request r = request_of(w, 0);
        const auto verdict = parse_verdict(w[7]);
        if (!verdict || *verdict == Verdict::False) throw Error("bad verdict '" + w[7] + "'");
        const auto v = parse_version(w[8]);
        const bool coarse = w.size() == 10;
        if (coarse && w[9] != "coarse") throw Error("unexpected '" + w[9] + "'");
        if (v > snap->version()) throw Error("entry from a newer policy version");
        MonitorState& s = ensure(r);
        if (v == snap->version()) {
          const auto res = step(s, r);
          if (res.decision != Decision::Grant) throw Error("recorded GRANT but replay denies");
          if (res.verdict != *verdict || res.coarse != coarse) {
            throw Error("recorded verdict " + w[7] + " but replay gives " + to_string(res.verdict));
          }
        } else {
          append_unchecked(s, r);
        }
      }
    } catch (const CorruptLogError&) {
      throw;
    } catch (const Error& e) {
      throw CorruptLogError(path, line_no, e.what());
    }
    pos = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

void repair_log(const std::string& path, const Replay& r) {
  if (!r.torn) return;
  std::error_code ec;
  fs::resize_file(path, r.valid_bytes, ec);
  if (ec) throw Error("cannot truncate " + path + ": " + ec.message());
}

std::map<std::string, MonitorState> replay_logdir(const std::string& dir, const SnapshotPtr& snap) {
  std::map<std::string, MonitorState> out;
  if (!fs::exists(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".log" && valid_wid(e.path().stem().string())) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    Replay r = replay_log(f.string(), snap);
    repair_log(f.string(), r);
    if (r.state) out.emplace(f.stem().string(), std::move(*r.state));
  }
  return out;
}

}  // namespace pamon
