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

#include "gemframe/session_store.h"

#include <fstream>
#include <mutex>
#include <sstream>

#include "gemframe/error.h"
#include "gemframe/gem_io.h"
#include "gemframe/pipeline.h"

namespace gemframe {

namespace fs = std::filesystem;

namespace {

constexpr char kSource[] = "source.txt";
constexpr char kLexicon[] = "lexicon.lex";
constexpr char kBase[] = "base.xml";
constexpr char kLog[] = "corrections.jsonl";
constexpr char kCurrent[] = "current.xml";
constexpr char kAccepted[] = "accepted.xml";

// Write to a sibling temporary file, then rename over the target.
void ReplaceFile(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  WriteTextFile(tmp, content);
  fs::rename(tmp, path);
}

void AppendLine(const fs::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + path.string());
}

}  // namespace

bool IsValidDocId(const std::string& doc_id) {
  if (doc_id.empty() || doc_id.size() > 128 || doc_id[0] == '.') return false;
  for (char c : doc_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
  for (const fs::directory_entry& item : fs::directory_iterator(root_)) {
    if (item.is_directory() && fs::exists(item.path() / kBase)) {
      Load(item.path());
    }
  }
}

void SessionStore::Load(const fs::path& dir) {
  auto entry = std::make_unique<Entry>();
  entry->dir = dir;
  const std::string doc_id = dir.filename().string();
  entry->doc = ParseDocument(ReadTextFile(dir / kSource), doc_id);
  entry->lexicon = fs::exists(dir / kLexicon)
                       ? ParseLexicon(ReadTextFile(dir / kLexicon), {})
                       : DefaultLexicon();
  entry->tree = ParseGem(ReadTextFile(dir / kBase), &entry->doc);

  if (fs::exists(dir / kLog)) {
    std::istringstream lines(ReadTextFile(dir / kLog));
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      Correction correction = CorrectionFromJson(line);
      entry->tree =
          ApplyCorrection(entry->tree, correction, entry->doc, entry->lexicon);
      entry->log.push_back(std::move(correction));
    }
  }
  // The log is authoritative; current.xml is a convenience copy.
  const std::string current = EmitGem(entry->tree, entry->doc);
  if (!fs::exists(dir / kCurrent) || ReadTextFile(dir / kCurrent) != current) {
    ReplaceFile(dir / kCurrent, current);
  }
  if (fs::exists(dir / kAccepted)) {
    entry->accepted_version =
        ParseGem(ReadTextFile(dir / kAccepted), &entry->doc).version;
  }
  entries_[doc_id] = std::move(entry);
}

void SessionStore::Import(const std::string& doc_id, std::string source,
                          const MarkerLexicon& lexicon) {
  if (!IsValidDocId(doc_id)) {
    throw ValidationError("invalid document id '" + doc_id + "'");
  }
  std::unique_lock lock(map_mutex_);
  if (entries_.count(doc_id) > 0) {
    throw ValidationError("document '" + doc_id + "' already exists");
  }
  PipelineResult result = RunPipeline(std::move(source), doc_id, lexicon);

  auto entry = std::make_unique<Entry>();
  entry->dir = root_ / doc_id;
  fs::create_directories(entry->dir);
  WriteTextFile(entry->dir / kSource, result.doc.source());
  WriteTextFile(entry->dir / kLexicon, SerializeLexicon(lexicon));
  const std::string xml = EmitGem(result.tree, result.doc);
  WriteTextFile(entry->dir / kBase, xml);
  WriteTextFile(entry->dir / kLog, "");
  ReplaceFile(entry->dir / kCurrent, xml);
  entry->doc = std::move(result.doc);
  entry->lexicon = lexicon;
  entry->tree = std::move(result.tree);
  entries_[doc_id] = std::move(entry);
}

std::vector<std::string> SessionStore::List() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, entry] : entries_) out.push_back(id);
  return out;
}

bool SessionStore::Contains(const std::string& doc_id) const {
  std::shared_lock lock(map_mutex_);
  return entries_.count(doc_id) > 0;
}

SessionStore::Entry& SessionStore::Find(const std::string& doc_id) const {
  std::shared_lock lock(map_mutex_);
  auto it = entries_.find(doc_id);
  if (it == entries_.end()) {
    throw NotFoundError("unknown document '" + doc_id + "'");
  }
  // Entries are never removed, so the reference outlives the lock.
  return *it->second;
}

DocumentSnapshot SessionStore::Get(const std::string& doc_id) const {
  Entry& entry = Find(doc_id);
  std::shared_lock lock(entry.mutex);
  return {entry.doc, entry.tree, entry.accepted_version};
}

std::vector<Correction> SessionStore::Log(const std::string& doc_id) const {
  Entry& entry = Find(doc_id);
  std::shared_lock lock(entry.mutex);
  return entry.log;
}

std::string SessionStore::ExportCurrent(const std::string& doc_id) const {
  Entry& entry = Find(doc_id);
  std::shared_lock lock(entry.mutex);
  return EmitGem(entry.tree, entry.doc);
}

ScopeTree SessionStore::Apply(const std::string& doc_id,
                              const Correction& correction) {
  Entry& entry = Find(doc_id);
  std::unique_lock lock(entry.mutex);
  ScopeTree next =
      ApplyCorrection(entry.tree, correction, entry.doc, entry.lexicon);
  AppendLine(entry.dir / kLog, CorrectionToJson(correction));
  ReplaceFile(entry.dir / kCurrent, EmitGem(next, entry.doc));
  entry.log.push_back(correction);
  entry.tree = next;
  return next;
}

int SessionStore::Accept(const std::string& doc_id,
                         std::optional<int> base_version) {
  Entry& entry = Find(doc_id);
  std::unique_lock lock(entry.mutex);
  if (base_version && *base_version != entry.tree.version) {
    throw ConflictError(*base_version, entry.tree.version);
  }
  ReplaceFile(entry.dir / kAccepted, EmitGem(entry.tree, entry.doc));
  entry.accepted_version = entry.tree.version;
  return entry.tree.version;
}

}  // namespace gemframe
