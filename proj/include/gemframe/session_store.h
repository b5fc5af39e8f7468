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

#ifndef GEMFRAME_SESSION_STORE_H_
#define GEMFRAME_SESSION_STORE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gemframe/corrections.h"
#include "gemframe/doc_model.h"
#include "gemframe/lexicon.h"
#include "gemframe/scope_resolver.h"

namespace gemframe {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DocumentSnapshot {
  Document doc;
  ScopeTree tree;
  std::optional<int> accepted_version;
};

// Review sessions persisted as one directory per document:
//
//   <root>/<doc id>/source.txt        input text, never rewritten
//   <root>/<doc id>/lexicon.lex       lexicon used by the pipeline
//   <root>/<doc id>/base.xml          pipeline output (version 1)
//   <root>/<doc id>/corrections.jsonl applied corrections, one per line
//   <root>/<doc id>/current.xml       latest version
//   <root>/<doc id>/accepted.xml      last accepted version, if any
//
// The current tree is always the replay of the log over base.xml. Each
// document has a single writer at a time; readers see whole versions only.
class SessionStore {
 public:
  // Opens (creating if needed) the store and replays every document in it.
  explicit SessionStore(std::filesystem::path root);

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  // Runs the pipeline on `source` and stores the result as version 1.
  // Throws ValidationError for a bad id or an id already in the store, and
  // ParseError for unreadable input.
  void Import(const std::string& doc_id, std::string source,
              const MarkerLexicon& lexicon = DefaultLexicon());

  std::vector<std::string> List() const;
  bool Contains(const std::string& doc_id) const;

  // Throw NotFoundError for unknown ids.
  DocumentSnapshot Get(const std::string& doc_id) const;
  std::vector<Correction> Log(const std::string& doc_id) const;
  std::string ExportCurrent(const std::string& doc_id) const;

  // Validates and applies a correction, appends it to the log and returns
  // the new tree. Throws ConflictError or ValidationError without changing
  // anything.
  ScopeTree Apply(const std::string& doc_id, const Correction& correction);

  // Marks the current version as accepted. A given base version must be
  // the current one. Returns the accepted version.
  int Accept(const std::string& doc_id, std::optional<int> base_version);

  const std::filesystem::path& root() const { return root_; }

 private:
  struct Entry {
    mutable std::shared_mutex mutex;
    std::filesystem::path dir;
    Document doc;
    MarkerLexicon lexicon;
    ScopeTree tree;
    std::vector<Correction> log;
    std::optional<int> accepted_version;
  };

  void Load(const std::filesystem::path& dir);
  Entry& Find(const std::string& doc_id) const;

  std::filesystem::path root_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

// Letters, digits, '.', '_' and '-', not starting with '.'.
bool IsValidDocId(const std::string& doc_id);

}  // namespace gemframe

#endif  // GEMFRAME_SESSION_STORE_H_
