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

#ifndef GEMFRAME_REVIEW_SERVER_H_
#define GEMFRAME_REVIEW_SERVER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "gemframe/doc_model.h"
#include "gemframe/scope_resolver.h"
#include "gemframe/session_store.h"

namespace httplib {
class Server;
}

namespace gemframe {

// HTTP API over a SessionStore:
//
//   GET  /api/docs                      document ids and versions
//   GET  /api/doc/{id}                  source text and block map
//   GET  /api/tree/{id}                 tree, version and rule traces
//   POST /api/tree/{id}/corrections     apply one correction
//   POST /api/tree/{id}/accept          accept the current version
//   GET  /api/tree/{id}/export          canonical XML of the current tree
//
// Status codes: 404 unknown document, 400 malformed request body,
// 422 correction rejected by a tree invariant, 409 stale base_version (the
// body carries current_version). Bodies are JSON except the export.
class ReviewServer {
 public:
  // `static_dir`, when given, is served at "/".
  explicit ReviewServer(SessionStore& store,
                        std::optional<std::filesystem::path> static_dir = {});
  ~ReviewServer();

  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Blocking. Returns false when the port cannot be bound.
  bool Listen(const std::string& host, int port);

  // Binds an ephemeral port and returns it (-1 on failure); follow with
  // ListenAfterBind on a separate thread.
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void WaitUntilReady() const;
  void Stop();

 private:
  void Route();

  SessionStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

std::string DocumentJson(const Document& doc);
std::string TreeJson(const ScopeTree& tree,
                     std::optional<int> accepted_version = std::nullopt);

}  // namespace gemframe

#endif  // GEMFRAME_REVIEW_SERVER_H_
