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

#ifndef GEMFRAME_SRC_XML_READER_H_
#define GEMFRAME_SRC_XML_READER_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gemframe::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;   // concatenated character data
  size_t offset = 0;  // byte offset of '<'

  const std::string* Attribute(std::string_view key) const;
};

// Non-validating reader for the XML subset used by GEM files: prolog,
// comments, elements, attributes, character data, CDATA sections, the five
// predefined entities and numeric character references. DOCTYPE
// declarations and processing instructions after the prolog are skipped.
// Throws ParseError with the byte offset of the problem.
Element Read(std::string_view input);

std::string EscapeText(std::string_view s);
std::string EscapeAttribute(std::string_view s);

}  // namespace gemframe::xml

#endif  // GEMFRAME_SRC_XML_READER_H_
