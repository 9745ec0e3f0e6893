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


#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pulsegraph/ad9910.hpp"
#include "pulsegraph/graph.hpp"
#include "pulsegraph/rfsoc.hpp"
#include "pulsegraph/schedule.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph {

// JSON documents. Parsers raise ParseError (with a JSON pointer to the
// offending value) or UnknownKind; emitters produce canonical text: sorted
// keys and 17-significant-digit floats.

/// Adds the document's nodes to graph and returns the validated root.
NodeId parse_graph(Graph& graph, std::string_view document);
std::string emit_graph(const Graph& graph, NodeId root);

/// Builds and finalizes a schedule from a ScheduleDocument.
Schedule parse_schedule(std::string_view document);

Bindings parse_bindings(std::string_view document);
ChannelMap parse_channel_map(std::string_view document);

/// True if the document's top level looks like a ScheduleDocument.
bool is_schedule_document(std::string_view document);

std::string emit_ad9910(const Ad9910Record& record,
                        const Ad9910Config& config = {});
std::string emit_ad9910_program(
    const std::map<std::string, std::vector<Ad9910Record>>& program,
    const Ad9910Config& config = {});
Ad9910Record parse_ad9910(std::string_view document);

std::string emit_channel_data(const ChannelData& data);
std::string emit_pulse_record(const PulseDataRecord& record);
std::string emit_rfsoc_program(const RfsocProgram& program);
PulseDataRecord parse_pulse_record(std::string_view document);

/// Accepts a single record, an array of records, or {"channels": {...}}
/// (the named channel is selected, or the only one present).
std::vector<PulseDataRecord> parse_pulse_records(std::string_view document,
                                                 const std::string& channel = "");

/// Reformats any JSON text canonically.
std::string canonicalize(std::string_view document);

}  // namespace pulsegraph
