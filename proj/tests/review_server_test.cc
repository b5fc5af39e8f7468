#include "gemframe/review_server.h"

#include <filesystem>
#include <random>
#include <string>
#include <thread>

#include "gemframe/gem_io.h"
#include "gemframe/pipeline.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.h"

namespace gemframe {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::Find;

const char kText[] =
    "En cas de fièvre, il faut consulter. Il faut se reposer.\n\n"
    "Il est recommandé de boire.";

class ReviewServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(std::random_device{}());
    dir_ = fs::temp_directory_path() /
           ("gemframe_server_" + std::to_string(rng()));
    store_ = std::make_unique<SessionStore>(dir_);
    store_->Import("guide", kText);
    server_ = std::make_unique<ReviewServer>(*store_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
    fs::remove_all(dir_);
  }

  httplib::Result Post(const std::string& path, const std::string& body) {
    return client_->Post(path, body, "application/json");
  }

  std::string ReattachBody(int base) const {
    json body = {
        {"base_version", base},
        {"kind", "reattach"},
        {"recommendation", SegmentId(SegmentKind::kRecommendation,
                                     Find(kText, "Il faut se reposer."))},
        {"parent", "root"}};
    return body.dump();
  }

  fs::path dir_;
  std::unique_ptr<SessionStore> store_;
  std::unique_ptr<ReviewServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = -1;
};

TEST_F(ReviewServerTest, ListsDocuments) {
  auto res = client_->Get("/api/docs");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  json body = json::parse(res->body);
  ASSERT_EQ(body["docs"].size(), 1u);
  EXPECT_EQ(body["docs"][0]["id"], "guide");
  EXPECT_EQ(body["docs"][0]["version"], 1);
  EXPECT_TRUE(body["docs"][0]["accepted_version"].is_null());
}

TEST_F(ReviewServerTest, ServesDocumentAndTree) {
  auto doc = client_->Get("/api/doc/guide");
  ASSERT_TRUE(doc);
  EXPECT_EQ(doc->status, 200);
  json d = json::parse(doc->body);
  EXPECT_EQ(d["source"], kText);
  EXPECT_EQ(d["blocks"].size(), 2u);

  auto tree = client_->Get("/api/tree/guide");
  ASSERT_TRUE(tree);
  EXPECT_EQ(tree->status, 200);
  json t = json::parse(tree->body);
  EXPECT_EQ(t["version"], 1);
  EXPECT_EQ(t["root"]["type"], "root");
  ASSERT_EQ(t["root"]["children"].size(), 2u);
  const json& cond = t["root"]["children"][0];
  EXPECT_EQ(cond["type"], "condition");
  EXPECT_EQ(cond["position"], "detached");
  EXPECT_EQ(cond["children"].size(), 2u);
}

TEST_F(ReviewServerTest, UnknownDocumentIs404) {
  for (const char* path :
       {"/api/doc/none", "/api/tree/none", "/api/tree/none/export"}) {
    auto res = client_->Get(path);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404) << path;
  }
  auto res = Post("/api/tree/none/corrections", ReattachBody(1));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(ReviewServerTest, ExportWithoutCorrectionsEqualsPipeline) {
  auto res = client_->Get("/api/tree/guide/export");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  PipelineResult expected = RunPipeline(kText, "guide", DefaultLexicon());
  EXPECT_EQ(res->body, EmitGem(expected.tree, expected.doc));
  EXPECT_NE(res->get_header_value("Content-Type").find("xml"),
            std::string::npos);
}

TEST_F(ReviewServerTest, CorrectionLifecycle) {
  auto ok = Post("/api/tree/guide/corrections", ReattachBody(1));
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  EXPECT_EQ(json::parse(ok->body)["version"], 2);

  auto stale = Post("/api/tree/guide/corrections", ReattachBody(1));
  ASSERT_TRUE(stale);
  EXPECT_EQ(stale->status, 409);
  EXPECT_EQ(json::parse(stale->body)["current_version"], 2);

  auto bad_json = Post("/api/tree/guide/corrections", "{not json");
  ASSERT_TRUE(bad_json);
  EXPECT_EQ(bad_json->status, 400);

  json mid = {{"base_version", 2},
              {"kind", "adjust_frame_end"},
              {"condition", SegmentId(SegmentKind::kCondition,
                                      Find(kText, "En cas de fièvre,"))},
              {"end", Find(kText, "il faut").end}};
  auto invalid = Post("/api/tree/guide/corrections", mid.dump());
  ASSERT_TRUE(invalid);
  EXPECT_EQ(invalid->status, 422);
  EXPECT_FALSE(json::parse(invalid->body)["error"].get<std::string>().empty());

  auto stale_accept = Post("/api/tree/guide/accept", R"({"base_version":1})");
  ASSERT_TRUE(stale_accept);
  EXPECT_EQ(stale_accept->status, 409);

  auto accept = Post("/api/tree/guide/accept", R"({"base_version":2})");
  ASSERT_TRUE(accept);
  EXPECT_EQ(accept->status, 200);
  auto tree = client_->Get("/api/tree/guide");
  EXPECT_EQ(json::parse(tree->body)["accepted_version"], 2);

  auto exported = client_->Get("/api/tree/guide/export");
  EXPECT_EQ(exported->body, store_->ExportCurrent("guide"));
  EXPECT_NE(exported->body.find("version=\"2\""), std::string::npos);
}

TEST_F(ReviewServerTest, ServesPlaceholderPage) {
  auto res = client_->Get("/");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
}

}  // namespace
}  // namespace gemframe
