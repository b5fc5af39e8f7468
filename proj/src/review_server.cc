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

#include "gemframe/review_server.h"

#include "gemframe/corrections.h"
#include "gemframe/error.h"
#include "gemframe/gem_io.h"
#include "httplib.h"
#include "json.hpp"

namespace gemframe {

namespace {

using nlohmann::ordered_json;

constexpr char kJson[] = "application/json";

constexpr char kPlaceholder[] =
    "<!doctype html><meta charset=\"utf-8\"><title>GemFrame review</title>"
    "<p>Review service is running. The API lives under /api/.</p>\n";

ordered_json NodeJson(const ScopeNode& node) {
  ordered_json out;
  out["type"] = NodeTypeName(node.type);
  if (node.type != ScopeNode::Type::kRoot) {
    out["id"] = node.id;
    out["start"] = node.span.start;
    out["end"] = node.span.end;
  }
  if (node.is_condition()) {
    out["position"] = PositionName(node.position);
    out["scope_start"] = node.frame.scope.start;
    out["scope_end"] = node.frame.scope.end;
    ordered_json rules = ordered_json::array();
    for (const RuleStep& step : node.frame.trace) {
      rules.push_back(RuleName(step.rule));
    }
    out["rules"] = rules;
  }
  if (!node.is_leaf()) {
    ordered_json children = ordered_json::array();
    for (const ScopeNode& child : node.children) {
      children.push_back(NodeJson(child));
    }
    out["children"] = children;
  }
  return out;
}

ordered_json TreeObject(const ScopeTree& tree,
                        std::optional<int> accepted_version) {
  ordered_json out;
  out["doc_id"] = tree.doc_id;
  out["version"] = tree.version;
  if (accepted_version) {
    out["accepted_version"] = *accepted_version;
  } else {
    out["accepted_version"] = nullptr;
  }
  out["root"] = NodeJson(tree.root);
  return out;
}

void Reply(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJson);
}

void ReplyError(httplib::Response& res, int status, const std::string& what) {
  Reply(res, status, ordered_json{{"error", what}});
}

// Runs `handler`, mapping store and model errors to status codes.
template <typename Handler>
void Guard(httplib::Response& res, Handler handler) {
  try {
    handler();
  } catch (const NotFoundError& e) {
    ReplyError(res, 404, e.what());
  } catch (const ConflictError& e) {
    Reply(res, 409,
          ordered_json{{"error", e.what()},
                       {"current_version", e.current_version()}});
  } catch (const std::invalid_argument& e) {
    ReplyError(res, 400, e.what());
  } catch (const ValidationError& e) {
    ReplyError(res, 422, e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, e.what());
  }
}

}  // namespace

std::string DocumentJson(const Document& doc) {
  ordered_json out;
  out["id"] = doc.id();
  out["source"] = doc.source();
  ordered_json blocks = ordered_json::array();
  for (size_t i = 0; i < doc.blocks().size(); ++i) {
    const Block& block = doc.blocks()[i];
    ordered_json item;
    item["index"] = i;
    item["kind"] = BlockKindName(block.kind);
    item["level"] = block.level;
    item["start"] = block.span.start;
    item["end"] = block.span.end;
    item["content_start"] = block.content.start;
    item["content_end"] = block.content.end;
    ordered_json sentences = ordered_json::array();
    for (const Span& s : block.sentences) {
      sentences.push_back({s.start, s.end});
    }
    item["sentences"] = sentences;
    blocks.push_back(item);
  }
  out["blocks"] = blocks;
  return out.dump();
}

std::string TreeJson(const ScopeTree& tree,
                     std::optional<int> accepted_version) {
  return TreeObject(tree, accepted_version).dump();
}

ReviewServer::ReviewServer(SessionStore& store,
                           std::optional<std::filesystem::path> static_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  Route();
  if (static_dir) {
    server_->set_mount_point("/", static_dir->string());
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholder, "text/html; charset=utf-8");
    });
  }
}

ReviewServer::~ReviewServer() { Stop(); }

void ReviewServer::Route() {
  server_->Get("/api/docs",
               [this](const httplib::Request&, httplib::Response& res) {
                 Guard(res, [&] {
                   ordered_json docs = ordered_json::array();
                   for (const std::string& id : store_.List()) {
                     DocumentSnapshot snapshot = store_.Get(id);
                     ordered_json item;
                     item["id"] = id;
                     item["version"] = snapshot.tree.version;
                     if (snapshot.accepted_version) {
                       item["accepted_version"] = *snapshot.accepted_version;
                     } else {
                       item["accepted_version"] = nullptr;
                     }
                     docs.push_back(item);
                   }
                   Reply(res, 200, ordered_json{{"docs", docs}});
                 });
               });

  server_->Get(R"(/api/doc/([^/]+))", [this](const httplib::Request& req,
                                             httplib::Response& res) {
    Guard(res, [&] {
      res.set_content(DocumentJson(store_.Get(req.matches[1]).doc) + "\n",
                      kJson);
    });
  });

  server_->Get(R"(/api/tree/([^/]+))", [this](const httplib::Request& req,
                                              httplib::Response& res) {
    Guard(res, [&] {
      DocumentSnapshot snapshot = store_.Get(req.matches[1]);
      res.set_content(TreeJson(snapshot.tree, snapshot.accepted_version) + "\n",
                      kJson);
    });
  });

  server_->Get(R"(/api/tree/([^/]+)/export)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 Guard(res, [&] {
                   res.set_content(store_.ExportCurrent(req.matches[1]),
                                   "application/xml; charset=utf-8");
                 });
               });

  server_->Post(R"(/api/tree/([^/]+)/corrections)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  Guard(res, [&] {
                    const std::string id = req.matches[1];
                    store_.Get(id);  // 404 before 400
                    Correction correction = CorrectionFromJson(req.body);
                    ScopeTree tree = store_.Apply(id, correction);
                    Reply(res, 200,
                          TreeObject(tree, store_.Get(id).accepted_version));
                  });
                });

  server_->Post(
      R"(/api/tree/([^/]+)/accept)",
      [this](const httplib::Request& req, httplib::Response& res) {
        Guard(res, [&] {
          const std::string id = req.matches[1];
          store_.Get(id);
          std::optional<int> base_version;
          if (!req.body.empty()) {
            auto body = nlohmann::json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.is_object()) {
              throw std::invalid_argument("body must be a JSON object");
            }
            if (body.contains("base_version")) {
              if (!body["base_version"].is_number_integer()) {
                throw std::invalid_argument("base_version must be an integer");
              }
              base_version = body["base_version"].get<int>();
            }
          }
          int version = store_.Accept(id, base_version);
          Reply(res, 200, ordered_json{{"accepted_version", version}});
        });
      });
}

bool ReviewServer::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int ReviewServer::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool ReviewServer::ListenAfterBind() { return server_->listen_after_bind(); }

void ReviewServer::WaitUntilReady() const { server_->wait_until_ready(); }

void ReviewServer::Stop() {
  if (server_->is_running()) server_->stop();
}

}  // namespace gemframe
