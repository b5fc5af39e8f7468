// Copyright 2026 The GemFrame Authors.
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

#ifndef GEMFRAME_GEM_IO_H_
#define GEMFRAME_GEM_IO_H_

#include <string>
#include <string_view>

#include "gemframe/doc_model.h"
#include "gemframe/scope_resolver.h"

namespace gemframe {

// Canonical XML for a scope tree:
//
//   <?xml version="1.0" encoding="UTF-8"?>
//   <gem doc-id="..." version="1">
//     <conditional start="0" end="17" scope-end="80" position="detached"
//                  rules="R3_detached_paragraph">
//       <recommendation start="18" end="60">source text</recommendation>
//     </conditional>
//     <justification start="61" end="80"/>
//   </gem>
//
// (the conditional's attributes are written on one line). Offsets are byte
// offsets into the document source. Two-space indentation, LF line ends,
// attributes in the order shown. Rule details are not written.
std::string EmitGem(const ScopeTree& tree, const Document& doc);

// Reads XML written by EmitGem or by hand. Unknown elements and attributes
// are rejected by name. `scope-end` and `rules` may be omitted: the scope
// then ends at the furthest end among the element's descendants (or at the
// condition itself) and the trace is empty. Node ids are rebuilt from the
// offsets.
//
// Malformed XML throws ParseError with a byte offset. Well-formed input
// that breaks the tree invariants throws ValidationError; an inverted
// offset pair names the element. When `doc` is given, offsets are bounded
// by its source and recommendation text must equal the source text it
// points to.
ScopeTree ParseGem(std::string_view xml, const Document* doc = nullptr);

}  // namespace gemframe

#endif  // GEMFRAME_GEM_IO_H_
