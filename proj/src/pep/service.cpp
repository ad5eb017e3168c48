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

#include "pamon/pep/service.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "pamon/policy/trace_io.hpp"

namespace pamon {

namespace fs = std::filesystem;

namespace {

void write_file_synced(const fs::path& path, const std::string& text) {
  {
    InstanceLog out(path.string());  // append-only writer with fsync
    std::string body = text;
    if (!body.empty() && body.back() == '\n') body.pop_back();
    out.append(body);
  }
}

void write_atomically(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  fs::remove(tmp);
  write_file_synced(tmp, text);
  fs::rename(tmp, path);
}

WorkflowResolver resolver_for(const std::string& dir) {
  return [dir](const std::string& name) { return read_text_file((fs::path(dir) / name).string()); };
}

}  // namespace

Service::Service(EngineConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const fs::path version_file = fs::path(cfg_.logdir) / "policy.version";
  if (fs::exists(version_file)) {
    const std::string text = read_text_file(version_file.string());
    std::uint64_t v = 0;
    try {
      v = std::stoull(text);
    } catch (const std::exception&) {
      throw Error("bad policy version in " + version_file.string());
    }
    const fs::path facts = fs::path(cfg_.logdir) / ("policy-v" + std::to_string(v)) / "policy.facts";
    snap_ = make_snapshot(load_policy_file(facts.string()), v, cfg_.grounding_cap);
  } else {
    const std::string text = read_text_file(cfg_.facts);
    Policy p = load_policy(text, resolver_for(cfg_.workflows), cfg_.facts);
    persist_policy(p, text, 1);
    snap_ = make_snapshot(std::move(p), 1, cfg_.grounding_cap);
  }
  for (auto& [wid, state] : replay_logdir(cfg_.logdir, snap_)) {
    auto slot = std::make_unique<Slot>();
    slot->state = std::move(state);
    slots_.emplace(wid, std::move(slot));
  }
  std::uint64_t lines = 0;
  for (const auto& [wid, slot] : slots_) {
    const std::string text = read_text_file(log_path(cfg_.logdir, wid));
    lines += static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '\n'));
  }
  seq_ = lines;
}

SnapshotPtr Service::snapshot() const {
  std::shared_lock lock(policy_mu_);
  return snap_;
}

void Service::persist_policy(const Policy& p, const std::string& facts_text, std::uint64_t version) {
  const fs::path dir = fs::path(cfg_.logdir) / ("policy-v" + std::to_string(version));
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& purpose : p.purposes()) {
    const WorkflowSpec& w = p.workflow(purpose);
    const fs::path rel(w.source);
    if (rel.is_absolute() || rel.lexically_normal().string().rfind("..", 0) == 0) {
      throw Error("workflow file '" + w.source + "' must be a relative path inside the workflow directory");
    }
    fs::create_directories((dir / rel).parent_path());
    write_file_synced(dir / rel, format_workflow(w));
  }
  write_file_synced(dir / "policy.facts", facts_text);
  write_atomically(fs::path(cfg_.logdir) / "policy.version", std::to_string(version));
  // older snapshots are no longer needed
  for (const auto& e : fs::directory_iterator(cfg_.logdir)) {
    const std::string name = e.path().filename().string();
    if (e.is_directory() && name.rfind("policy-v", 0) == 0 && e.path() != dir) fs::remove_all(e.path());
  }
}

Service::Slot* Service::find(const std::string& wid) {
  std::lock_guard lock(slots_mu_);
  auto it = slots_.find(wid);
  return it == slots_.end() ? nullptr : it->second.get();
}

Service::Slot& Service::find_or_create(const std::string& wid) {
  std::lock_guard lock(slots_mu_);
  auto& slot = slots_[wid];
  if (!slot) slot = std::make_unique<Slot>();
  return *slot;
}

InstanceLog& Service::log_of(Slot& s, const std::string& wid) {
  if (!s.log) s.log = std::make_unique<InstanceLog>(log_path(cfg_.logdir, wid));
  return *s.log;
}

InstanceView Service::view(MonitorState& s) {
  return {s.wid(), s.purpose(), s.trace().requests(), s.verdict(), s.coarse(), s.frozen(), s.version()};
}

Decided Service::decide(const Request& r) {
  if (!valid_wid(r.wid)) {
    throw FieldError("wid", r.wid, "invalid wid '" + r.wid + "': use letters, digits, '_', '-' and '.'");
  }
  std::shared_lock policy(policy_mu_);
  check_declared(snap_->policy(), r);
  Slot& slot = find_or_create(r.wid);
  std::lock_guard lock(slot.mu);
  MonitorState s = slot.state ? *slot.state : init_instance(snap_, r.purpose, r.wid);
  rebase(s, snap_);
  const StepResult res = step(s, r);
  const std::string line = res.decision == Decision::Grant ? format_grant(r, res, s.version())
                                                           : format_deny(r, s.version());
  log_of(slot, r.wid).append(line);
  slot.state = std::move(s);
  return {++seq_, res, snap_->version()};
}

InstanceView Service::instance(const std::string& wid) {
  std::shared_lock policy(policy_mu_);
  Slot* slot = find(wid);
  if (!slot) throw NotFoundError("unknown instance '" + wid + "'");
  std::lock_guard lock(slot->mu);
  if (!slot->state) throw NotFoundError("unknown instance '" + wid + "'");
  rebase(*slot->state, snap_);
  return view(*slot->state);
}

InstanceView Service::close(const std::string& wid) {
  std::shared_lock policy(policy_mu_);
  Slot* slot = find(wid);
  if (!slot) throw NotFoundError("unknown instance '" + wid + "'");
  std::lock_guard lock(slot->mu);
  if (!slot->state) throw NotFoundError("unknown instance '" + wid + "'");
  MonitorState s = *slot->state;
  rebase(s, snap_);
  close_instance(s);
  log_of(*slot, wid).append(format_close(s.version()));
  ++seq_;
  slot->state = std::move(s);
  return view(*slot->state);
}

std::uint64_t Service::replace_policy(const std::string& facts_text) {
  Policy p = load_policy(facts_text, resolver_for(cfg_.workflows), "<policy>");
  std::unique_lock policy(policy_mu_);
  if (p == snap_->policy()) return snap_->version();
  {
    std::lock_guard lock(slots_mu_);
    for (const auto& [wid, slot] : slots_) {
      std::lock_guard slot_lock(slot->mu);
      if (slot->state && !p.has_purpose(slot->state->purpose())) {
        throw MonitorError("purpose '" + slot->state->purpose() + "' is still used by instance " + wid);
      }
    }
  }
  const std::uint64_t version = snap_->version() + 1;
  persist_policy(p, facts_text, version);
  snap_ = make_snapshot(std::move(p), version, cfg_.grounding_cap);
  return version;
}

AchievabilityResult Service::achievable(const std::string& purpose) {
  const SnapshotPtr snap = snapshot();
  if (!snap->policy().has_purpose(purpose)) throw UnknownEntityError("purpose", purpose);
  return purpose_achievable(snap->policy(), purpose, "fresh");
}

std::map<std::string, InstanceView> Service::instances() {
  std::vector<std::string> wids;
  {
    std::lock_guard lock(slots_mu_);
    for (const auto& [wid, slot] : slots_) wids.push_back(wid);
  }
  std::map<std::string, InstanceView> out;
  for (const auto& wid : wids) {
    try {
      out.emplace(wid, instance(wid));
    } catch (const NotFoundError&) {
    }
  }
  return out;
}

std::map<std::string, MonitorState> Service::states() {
  std::shared_lock policy(policy_mu_);
  std::lock_guard lock(slots_mu_);
  std::map<std::string, MonitorState> out;
  for (const auto& [wid, slot] : slots_) {
    std::lock_guard slot_lock(slot->mu);
    if (!slot->state) continue;
    rebase(*slot->state, snap_);
    out.emplace(wid, *slot->state);
  }
  return out;
}

}  // namespace pamon
