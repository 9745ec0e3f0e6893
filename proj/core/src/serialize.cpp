// Copyright 2026 The pulsegraph Authors
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


#include "pulsegraph/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "pulsegraph/evaluate.hpp"

namespace pulsegraph {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_error(const std::string& path, const std::string& msg) {
  raise(ErrorCode::ParseError,
        "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

std::string child_path(const std::string& path, const std::string& key) {
  return path + "/" + key;
}
std::string child_path(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) parse_error(path, "expected a number");
  return v.get<double>();
}

bool boolean(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) parse_error(child_path(path, key), "expected a boolean");
  return it->get<bool>();
}

std::string string_field(const json& obj, const char* key,
                         const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) parse_error(child_path(path, key), "expected a string");
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key,
                        const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) parse_error(child_path(path, key), "expected an array");
  return v;
}

// Canonical text: sorted keys, floats with 17 significant digits.
void dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        raise(ErrorCode::InvalidArgument, "cannot serialize a non-finite number");
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    case json::value_t::string:
      out += j.dump();
      break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump(e, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        dump(v, out);
      }
      out += '}';
      break;
    }
    default:
      raise(ErrorCode::InvalidArgument, "unsupported JSON value");
  }
}

std::string canonical(const json& j) {
  std::string out;
  dump(j, out);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------- graphs

class GraphReader {
 public:
  GraphReader(Graph& g, const json* defs, std::string defs_path)
      : g_(g), defs_(defs), defs_path_(std::move(defs_path)) {}

  NodeId node(const json& v, const std::string& path) {
    if (v.is_number()) return g_.num(v.get<double>());
    if (!v.is_object()) parse_error(path, "expected a node");
    if (auto it = v.find("var"); it != v.end()) {
      if (!it->is_string()) parse_error(child_path(path, "var"), "expected a string");
      return g_.var(it->get<std::string>());
    }
    if (auto it = v.find("ref"); it != v.end()) return ref(*it, path);
    const std::string kind = string_field(v, "kind", path);
    auto k = kind_from_name(kind);
    if (!k) raise(ErrorCode::UnknownKind, "at " + path + ": '" + kind + "'");
    auto f = [&](const char* key) {
      return node(require(v, key, path), child_path(path, key));
    };
    auto list = [&](const char* key) {
      const json& arr = array_field(v, key, path);
      std::vector<NodeId> out;
      const std::string p = child_path(path, key);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(node(arr[i], child_path(p, i)));
      }
      return out;
    };
    auto args = [&](const char* key) {
      auto ids = list(key);
      return std::vector<Arg>(ids.begin(), ids.end());
    };
    auto opt = [&](const char* key) -> std::optional<NodeId> {
      auto it = v.find(key);
      if (it == v.end() || it->is_null()) return std::nullopt;
      return node(*it, child_path(path, key));
    };
    switch (*k) {
      case NodeKind::Num:
        return g_.num(number(require(v, "value", path), child_path(path, "value")));
      case NodeKind::Var:
        return g_.var(string_field(v, "name", path));
      case NodeKind::Const: {
        NodeId value = f("value");
        return g_.constant(value, f("duration"));
      }
      case NodeKind::Zero:
        return g_.zero(f("duration"));
      case NodeKind::Sine:
      case NodeKind::Cosine: {
        NodeId freq = f("frequency");
        NodeId phase = opt("phase").value_or(g_.num(0.0));
        NodeId dur = f("duration");
        auto clock = opt("clock");
        if (clock && g_.kind(*clock) != NodeKind::Clock) {
          parse_error(child_path(path, "clock"), "expected a Clock node");
        }
        return *k == NodeKind::Sine ? g_.sine(freq, phase, dur, clock)
                                    : g_.cosine(freq, phase, dur, clock);
      }
      case NodeKind::Poly: {
        auto coeffs = args("coefficients");
        return g_.poly(std::move(coeffs), f("duration"));
      }
      case NodeKind::Gauss: {
        NodeId a = f("amplitude");
        NodeId m = f("mean");
        NodeId s = f("sigma");
        return g_.gauss(a, m, s, f("duration"));
      }
      case NodeKind::Sum:
        return g_.add(node::Sum{list("operands")});
      case NodeKind::Product:
        return g_.add(node::Product{list("operands")});
      case NodeKind::Max:
        return g_.add(node::Max{list("operands")});
      case NodeKind::Sequence:
        return g_.add(node::Sequence{list("children")});
      case NodeKind::Clock:
        return g_.clock(string_field(v, "id", path));
      case NodeKind::Spline:
        return g_.add(node::Spline{list("knots")});
      case NodeKind::Discrete:
        return g_.add(node::Discrete{list("steps")});
      case NodeKind::Tone: {
        node::Tone t;
        t.frequency = f("frequency");
        t.phase = opt("phase").value_or(g_.num(0.0));
        t.amplitude = f("amplitude");
        t.sync_phase = boolean(v, "sync_phase", path);
        t.feedback_enable = boolean(v, "feedback_enable", path);
        if (auto it = v.find("frame_index"); it != v.end() && !it->is_null()) {
          if (!it->is_number_integer()) {
            parse_error(child_path(path, "frame_index"), "expected an integer");
          }
          t.frame_index = it->get<int>();
        }
        return g_.add(std::move(t));
      }
      case NodeKind::Framerot: {
        node::Framerot fr;
        fr.rotation = f("rotation");
        fr.apply_at_start = boolean(v, "apply_at_start", path);
        fr.apply_at_end = boolean(v, "apply_at_end", path);
        fr.clear_accumulator = boolean(v, "clear_accumulator", path);
        return g_.add(fr);
      }
      case NodeKind::Channel: {
        node::Channel c;
        c.tones = list("tones");
        c.frames = list("frames");
        c.duration = f("duration");
        return g_.add(std::move(c));
      }
    }
    raise(ErrorCode::UnknownKind, "at " + path + ": '" + kind + "'");
  }

 private:
  NodeId ref(const json& id, const std::string& path) {
    std::string key;
    if (id.is_string()) {
      key = id.get<std::string>();
    } else if (id.is_number_integer()) {
      key = std::to_string(id.get<std::int64_t>());
    } else {
      parse_error(child_path(path, "ref"), "expected a string or integer");
    }
    if (auto it = resolved_.find(key); it != resolved_.end()) return it->second;
    if (defs_ == nullptr || !defs_->contains(key)) {
      parse_error(child_path(path, "ref"), "unknown definition '" + key + "'");
    }
    if (!resolving_.insert(key).second) {
      raise(ErrorCode::CycleDetected, "definition '" + key + "' refers to itself");
    }
    NodeId id_out = node(defs_->at(key), child_path(defs_path_, key));
    resolving_.erase(key);
    resolved_.emplace(key, id_out);
    return id_out;
  }

  Graph& g_;
  const json* defs_;
  std::string defs_path_;
  std::map<std::string, NodeId> resolved_;
  std::set<std::string> resolving_;
};

NodeId read_graph(Graph& g, const json& doc, const std::string& path) {
  if (doc.is_object() && doc.contains("root") && !doc.contains("kind")) {
    const json* defs = nullptr;
    if (auto it = doc.find("defs"); it != doc.end()) {
      if (!it->is_object()) parse_error(child_path(path, "defs"), "expected an object");
      defs = &*it;
    }
    GraphReader reader(g, defs, child_path(path, "defs"));
    return reader.node(doc.at("root"), child_path(path, "root"));
  }
  GraphReader reader(g, nullptr, "");
  return reader.node(doc, path);
}

json number_json(double v) { return json(v); }

class GraphWriter {
 public:
  GraphWriter(const Graph& g, NodeId root) : g_(g) {
    const auto order = post_order(g, root);
    std::unordered_map<std::uint32_t, int> parents;
    for (NodeId id : order) {
      for_each_edge(g.at(id), [&](NodeId e) { ++parents[e.index]; });
    }
    for (NodeId id : order) {
      const auto k = g.kind(id);
      if (parents[id.index] >= 2 && k != NodeKind::Num && k != NodeKind::Var) {
        names_.emplace(id.index, "n" + std::to_string(names_.size()));
        shared_.push_back(id);
      }
    }
    json body = write(root, true);
    if (shared_.empty()) {
      doc_ = std::move(body);
    } else {
      json defs = json::object();
      for (NodeId id : shared_) defs[names_.at(id.index)] = write(id, true);
      doc_ = json{{"defs", std::move(defs)}, {"root", std::move(body)}};
    }
  }

  const json& doc() const { return doc_; }

 private:
  json write(NodeId id, bool define) {
    if (!define) {
      if (auto it = names_.find(id.index); it != names_.end()) {
        return json{{"ref", it->second}};
      }
    }
    const auto& n = g_.at(id);
    auto e = [&](NodeId c) { return write(c, false); };
    auto list = [&](const std::vector<NodeId>& ids) {
      json arr = json::array();
      for (NodeId c : ids) arr.push_back(e(c));
      return arr;
    };
    json out = json::object();
    out["kind"] = std::string(kind_name(kind_of(n)));
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, node::Num>) {
            out = number_json(x.value);
          } else if constexpr (std::is_same_v<T, node::Var>) {
            out = json{{"var", x.name}};
          } else if constexpr (std::is_same_v<T, node::Const>) {
            out["value"] = e(x.value);
            out["duration"] = e(x.duration);
          } else if constexpr (std::is_same_v<T, node::Zero>) {
            out["duration"] = e(x.duration);
          } else if constexpr (std::is_same_v<T, node::Sine> ||
                               std::is_same_v<T, node::Cosine>) {
            out["frequency"] = e(x.frequency);
            out["phase"] = e(x.phase);
            out["duration"] = e(x.duration);
            if (x.clock) out["clock"] = e(*x.clock);
          } else if constexpr (std::is_same_v<T, node::Poly>) {
            out["coefficients"] = list(x.coefficients);
            out["duration"] = e(x.duration);
          } else if constexpr (std::is_same_v<T, node::Gauss>) {
            out["amplitude"] = e(x.amplitude);
            out["mean"] = e(x.mean);
            out["sigma"] = e(x.sigma);
            out["duration"] = e(x.duration);
          } else if constexpr (std::is_same_v<T, node::Sum> ||
                               std::is_same_v<T, node::Product> ||
                               std::is_same_v<T, node::Max>) {
            out["operands"] = list(x.operands);
          } else if constexpr (std::is_same_v<T, node::Sequence>) {
            out["children"] = list(x.children);
          } else if constexpr (std::is_same_v<T, node::Clock>) {
            out["id"] = x.id;
          } else if constexpr (std::is_same_v<T, node::Spline>) {
            out["knots"] = list(x.knots);
          } else if constexpr (std::is_same_v<T, node::Discrete>) {
            out["steps"] = list(x.steps);
          } else if constexpr (std::is_same_v<T, node::Tone>) {
            out["frequency"] = e(x.frequency);
            out["phase"] = e(x.phase);
            out["amplitude"] = e(x.amplitude);
            out["sync_phase"] = x.sync_phase;
            out["feedback_enable"] = x.feedback_enable;
            out["frame_index"] =
                x.frame_index ? json(*x.frame_index) : json(nullptr);
          } else if constexpr (std::is_same_v<T, node::Framerot>) {
            out["rotation"] = e(x.rotation);
            out["apply_at_start"] = x.apply_at_start;
            out["apply_at_end"] = x.apply_at_end;
            out["clear_accumulator"] = x.clear_accumulator;
          } else if constexpr (std::is_same_v<T, node::Channel>) {
            out["tones"] = list(x.tones);
            out["frames"] = list(x.frames);
            out["duration"] = e(x.duration);
          }
        },
        n);
    return out;
  }

  const Graph& g_;
  std::unordered_map<std::uint32_t, std::string> names_;
  std::vector<NodeId> shared_;
  json doc_;
};

// ---------------------------------------------------------------- schedules

void read_schedule_item(ScheduleBuilder& b, const json& item,
                        const std::string& path) {
  if (!item.is_object() || item.size() != 1) {
    parse_error(path, "expected exactly one of 'seq', 'par', 'play'");
  }
  if (auto it = item.find("play"); it != item.end()) {
    const std::string p = child_path(path, "play");
    const std::string channel = string_field(*it, "channel", p);
    NodeId root = read_graph(b.graph(), require(*it, "graph", p),
                             child_path(p, "graph"));
    b.play(channel, root);
    return;
  }
  const bool parallel = item.contains("par");
  if (!parallel && !item.contains("seq")) {
    parse_error(path, "expected exactly one of 'seq', 'par', 'play'");
  }
  const char* key = parallel ? "par" : "seq";
  const json& items = array_field(item, key, path);
  parallel ? b.open_parallel() : b.open_sequential();
  const std::string p = child_path(path, key);
  for (std::size_t i = 0; i < items.size(); ++i) {
    read_schedule_item(b, items[i], child_path(p, i));
  }
  b.close();
}

// ---------------------------------------------------------------- records

json const_dc_json(const ConstDC& dc) {
  return json{{"type", "ConstDC"},
              {"amplitude", number_json(dc.amplitude)},
              {"duration", number_json(dc.duration)}};
}

json step_param_json(const StepParam& p) {
  if (const auto* v = std::get_if<double>(&p)) return number_json(*v);
  json steps = json::array();
  for (const auto& s : std::get<StepWaveform>(p).steps) {
    steps.push_back(const_dc_json(s));
  }
  return json{{"type", "StepWaveform"}, {"steps", std::move(steps)}};
}

json ad9910_json(const Ad9910Record& record, const Ad9910Config& config) {
  if (const auto* dc = std::get_if<ConstDC>(&record)) return const_dc_json(*dc);
  if (const auto* t = std::get_if<SingleTone>(&record)) {
    const auto words = quantize_registers(*t, config);
    return json{{"type", "SingleTone"},
                {"frequency", number_json(t->frequency)},
                {"phase", number_json(t->phase)},
                {"amplitude", number_json(t->amplitude)},
                {"duration", number_json(t->duration)},
                {"phase_continuous", t->phase_continuous},
                {"registers",
                 {{"ftw", words.ftw}, {"pow", words.pow}, {"asf", words.asf}}}};
  }
  const auto& d = std::get<DiscreteSine>(record);
  return json{{"type", "DiscreteSine"},
              {"frequency", step_param_json(d.frequency)},
              {"phase", step_param_json(d.phase)},
              {"amplitude", step_param_json(d.amplitude)},
              {"duration", number_json(d.duration)},
              {"phase_continuous", d.phase_continuous}};
}

ConstDC read_const_dc(const json& j, const std::string& path) {
  return ConstDC{number(require(j, "amplitude", path), child_path(path, "amplitude")),
                 number(require(j, "duration", path), child_path(path, "duration"))};
}

StepParam read_step_param(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (string_field(j, "type", path) != "StepWaveform") {
    parse_error(path, "expected a number or StepWaveform");
  }
  StepWaveform w;
  const json& steps = array_field(j, "steps", path);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    w.steps.push_back(read_const_dc(steps[i], child_path(child_path(path, "steps"), i)));
  }
  return w;
}

Ad9910Record read_ad9910(const json& j, const std::string& path) {
  const std::string type = string_field(j, "type", path);
  auto num = [&](const char* key) {
    return number(require(j, key, path), child_path(path, key));
  };
  if (type == "ConstDC") return read_const_dc(j, path);
  if (type == "SingleTone") {
    return SingleTone{num("frequency"), num("phase"), num("amplitude"),
                      num("duration"), boolean(j, "phase_continuous", path)};
  }
  if (type == "DiscreteSine") {
    auto p = [&](const char* key) {
      return read_step_param(require(j, key, path), child_path(path, key));
    };
    return DiscreteSine{p("frequency"), p("phase"), p("amplitude"),
                        num("duration"), boolean(j, "phase_continuous", path)};
  }
  raise(ErrorCode::UnknownKind, "at " + path + "/type: '" + type + "'");
}

json param_json(const ParamData& p) {
  if (const auto* v = std::get_if<double>(&p)) return number_json(*v);
  json arr = json::array();
  if (const auto* s = std::get_if<SplineKnots>(&p)) {
    for (double k : s->knots) arr.push_back(number_json(k));
    return json{{"tuple", std::move(arr)}};
  }
  for (double v : std::get<std::vector<double>>(p)) arr.push_back(number_json(v));
  return arr;
}

ParamData read_param(const json& j, const std::string& path) {
  auto values = [&](const json& arr, const std::string& p) {
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(number(arr[i], child_path(p, i)));
    }
    return out;
  };
  if (j.is_number()) return j.get<double>();
  if (j.is_array()) return values(j, path);
  if (j.is_object() && j.contains("tuple")) {
    return SplineKnots{values(array_field(j, "tuple", path), child_path(path, "tuple"))};
  }
  parse_error(path, "expected a number, list, or {\"tuple\": [...]}");
}

json tone_json(const ToneData& t) {
  return json{{"frequency", param_json(t.frequency)},
              {"phase", param_json(t.phase)},
              {"amplitude", param_json(t.amplitude)},
              {"sync_phase", t.sync_phase},
              {"frame_index", t.frame_index ? json(*t.frame_index) : json(nullptr)},
              {"feedback_enable", t.feedback_enable}};
}

json frame_json(const FramerotData& f) {
  return json{{"rotation", param_json(f.rotation)},
              {"apply_at_start", f.apply_at_start},
              {"apply_at_end", f.apply_at_end},
              {"clear_accumulator", f.clear_accumulator}};
}

json tones_frames(const std::array<ToneData, 2>& tones,
                  const std::array<FramerotData, 2>& frames, json out) {
  out["tones"] = json::array({tone_json(tones[0]), tone_json(tones[1])});
  out["frames"] = json::array({frame_json(frames[0]), frame_json(frames[1])});
  return out;
}

json pulse_record_json(const PulseDataRecord& r) {
  return tones_frames(r.tones, r.frames,
                      json{{"channel_index", r.channel_index},
                           {"duration", number_json(r.duration)}});
}

PulseDataRecord read_pulse_record(const json& j, const std::string& path) {
  PulseDataRecord r;
  const json& idx = require(j, "channel_index", path);
  if (!idx.is_number_integer()) {
    parse_error(child_path(path, "channel_index"), "expected an integer");
  }
  r.channel_index = idx.get<int>();
  r.duration = number(require(j, "duration", path), child_path(path, "duration"));
  const json& tones = array_field(j, "tones", path);
  const json& frames = array_field(j, "frames", path);
  if (tones.size() != 2 || frames.size() != 2) {
    raise(ErrorCode::ArityError, "at " + path + ": need 2 tones and 2 frames");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string tp = child_path(child_path(path, "tones"), i);
    const json& t = tones[i];
    auto& tone = r.tones[i];
    tone.frequency = read_param(require(t, "frequency", tp), child_path(tp, "frequency"));
    tone.phase = read_param(require(t, "phase", tp), child_path(tp, "phase"));
    tone.amplitude = read_param(require(t, "amplitude", tp), child_path(tp, "amplitude"));
    tone.sync_phase = boolean(t, "sync_phase", tp);
    tone.feedback_enable = boolean(t, "feedback_enable", tp);
    if (auto it = t.find("frame_index"); it != t.end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<int>() < 0 || it->get<int>() > 1) {
        parse_error(child_path(tp, "frame_index"), "expected 0, 1, or null");
      }
      tone.frame_index = it->get<int>();
    }
    const std::string fp = child_path(child_path(path, "frames"), i);
    const json& f = frames[i];
    auto& frame = r.frames[i];
    frame.rotation = read_param(require(f, "rotation", fp), child_path(fp, "rotation"));
    frame.apply_at_start = boolean(f, "apply_at_start", fp);
    frame.apply_at_end = boolean(f, "apply_at_end", fp);
    frame.clear_accumulator = boolean(f, "clear_accumulator", fp);
  }
  return r;
}

}  // namespace

NodeId parse_graph(Graph& graph, std::string_view document) {
  const json doc = parse_json(document);
  NodeId root = read_graph(graph, doc, "");
  validate(graph, root);
  return root;
}

std::string emit_graph(const Graph& graph, NodeId root) {
  return canonical(GraphWriter(graph, root).doc());
}

Schedule parse_schedule(std::string_view document) {
  const json doc = parse_json(document);
  std::vector<std::string> channels;
  if (auto it = doc.find("channels"); doc.is_object() && it != doc.end()) {
    if (!it->is_array()) parse_error("/channels", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) {
        parse_error(child_path("/channels", i), "expected a string");
      }
      channels.push_back((*it)[i].get<std::string>());
    }
  }
  ScheduleBuilder builder(std::move(channels));
  read_schedule_item(builder, require(doc, "body", ""), "/body");
  return builder.finalize();
}

bool is_schedule_document(std::string_view document) {
  const json doc = parse_json(document);
  return doc.is_object() && doc.contains("body") && !doc.contains("kind");
}

Bindings parse_bindings(std::string_view document) {
  const json doc = parse_json(document);
  if (!doc.is_object()) parse_error("", "expected an object of name: value");
  Bindings out;
  for (const auto& [k, v] : doc.items()) out[k] = number(v, "/" + k);
  return out;
}

ChannelMap parse_channel_map(std::string_view document) {
  const json doc = parse_json(document);
  if (!doc.is_object()) parse_error("", "expected an object of name: index");
  ChannelMap out;
  for (const auto& [k, v] : doc.items()) {
    if (!v.is_number_integer()) parse_error("/" + k, "expected an integer");
    out[k] = v.get<int>();
  }
  return out;
}

std::string emit_ad9910(const Ad9910Record& record, const Ad9910Config& config) {
  return canonical(ad9910_json(record, config));
}

std::string emit_ad9910_program(
    const std::map<std::string, std::vector<Ad9910Record>>& program,
    const Ad9910Config& config) {
  json channels = json::object();
  for (const auto& [name, records] : program) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(ad9910_json(r, config));
    channels[name] = std::move(arr);
  }
  return canonical(json{{"channels", std::move(channels)}});
}

Ad9910Record parse_ad9910(std::string_view document) {
  return read_ad9910(parse_json(document), "");
}

std::string emit_channel_data(const ChannelData& data) {
  return canonical(tones_frames(data.tones, data.frames,
                                json{{"duration", number_json(data.duration)}}));
}

std::string emit_pulse_record(const PulseDataRecord& record) {
  return canonical(pulse_record_json(record));
}

std::string emit_rfsoc_program(const RfsocProgram& program) {
  json channels = json::object();
  for (const auto& [name, records] : program) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(pulse_record_json(r));
    channels[name] = std::move(arr);
  }
  return canonical(json{{"channels", std::move(channels)}});
}

PulseDataRecord parse_pulse_record(std::string_view document) {
  return read_pulse_record(parse_json(document), "");
}

std::vector<PulseDataRecord> parse_pulse_records(std::string_view document,
                                                 const std::string& channel) {
  const json doc = parse_json(document);
  std::vector<PulseDataRecord> out;
  auto read_array = [&](const json& arr, const std::string& path) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(read_pulse_record(arr[i], child_path(path, i)));
    }
  };
  if (doc.is_array()) {
    read_array(doc, "");
  } else if (doc.is_object() && doc.contains("channels")) {
    const json& channels = doc.at("channels");
    if (!channels.is_object()) parse_error("/channels", "expected an object");
    std::string name = channel;
    if (name.empty()) {
      if (channels.size() != 1) {
        raise(ErrorCode::UnknownChannel,
              "document has several channels; select one");
      }
      name = channels.begin().key();
    }
    if (!channels.contains(name)) {
      raise(ErrorCode::UnknownChannel, "no channel '" + name + "' in document");
    }
    const json& arr = channels.at(name);
    if (!arr.is_array()) parse_error("/channels/" + name, "expected an array");
    read_array(arr, "/channels/" + name);
  } else {
    out.push_back(read_pulse_record(doc, ""));
  }
  return out;
}

std::string canonicalize(std::string_view document) {
  return canonical(parse_json(document));
}

}  // namespace pulsegraph
