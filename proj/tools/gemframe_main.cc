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

// gemframe: command-line front end.
//
//   gemframe segment <in.txt> [--lexicon F] -o <out.xml>
//   gemframe eval --system <xml> --gold <xml> --source <txt> [--report F]
//   gemframe agree <a.xml> <b.xml> --source <txt>
//   gemframe import <in.txt> --store DIR [--lexicon F] [--doc-id ID]
//   gemframe serve --port N --store DIR [--static DIR] [--host H]

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gemframe/error.h"
#include "gemframe/evaluator.h"
#include "gemframe/gem_io.h"
#include "gemframe/lexicon.h"
#include "gemframe/pipeline.h"
#include "gemframe/review_server.h"
#include "gemframe/session_store.h"

namespace {

using namespace gemframe;

MarkerLexicon LexiconFrom(const std::string& path) {
  if (path.empty()) return DefaultLexicon();
  return LoadLexicon(ReadTextFile(path));
}

int RunSegment(const std::string& input, const std::string& lexicon_path,
               const std::string& output, std::string doc_id) {
  const MarkerLexicon lexicon = LexiconFrom(lexicon_path);
  if (doc_id.empty()) doc_id = DocIdFromPath(input);
  PipelineResult result = RunPipeline(ReadTextFile(input), doc_id, lexicon);
  WriteTextFile(output, EmitGem(result.tree, result.doc));
  std::cout << FormatStats(result.stats);
  return 0;
}

int RunEval(const std::string& system_path, const std::string& gold_path,
            const std::string& source_path, const std::string& report_path) {
  const std::string source = ReadTextFile(source_path);
  const std::string system_xml = ReadTextFile(system_path);
  const std::string gold_xml = ReadTextFile(gold_path);
  const std::string system_id = ParseGem(system_xml).doc_id;
  const std::string gold_id = ParseGem(gold_xml).doc_id;
  if (system_id != gold_id) {
    std::cerr << "error: doc-id mismatch: system '" << system_id << "', gold '"
              << gold_id << "'\n";
    return 2;
  }
  const Document doc = ParseDocument(source, gold_id);
  const ScopeTree system = ParseGem(system_xml, &doc);
  const ScopeTree gold = ParseGem(gold_xml, &doc);
  EvalReport report = Evaluate(system, gold, doc);
  std::cout << FormatReportTable(report);
  if (!report_path.empty())
    WriteTextFile(report_path, FormatReportJson(report));
  return 0;
}

int RunAgree(const std::string& a_path, const std::string& b_path,
             const std::string& source_path) {
  const std::string source = ReadTextFile(source_path);
  const Document doc = ParseDocument(source, DocIdFromPath(source_path));
  const std::string a_xml = ReadTextFile(a_path);
  const std::string b_xml = ReadTextFile(b_path);
  const std::string a_id = ParseGem(a_xml).doc_id;
  const std::string b_id = ParseGem(b_xml).doc_id;
  if (a_id != b_id) {
    std::cerr << "error: doc-id mismatch: '" << a_id << "' vs '" << b_id
              << "'\n";
    return 2;
  }
  const ScopeTree a = ParseGem(a_xml, &doc);
  const ScopeTree b = ParseGem(b_xml, &doc);
  AgreementCounts counts = CountAgreement(a, b, doc.source());
  std::printf("agreement: %zu/%zu = %.4f\n", counts.agreeing, counts.total(),
              AccuracyFromCounts(counts.agreeing, counts.total()));
  if (doc.sentences().empty()) {
    std::printf("kappa: n/a\n");
  } else {
    std::printf("kappa: %.4f\n",
                CohenKappa(SentenceLabels(a, doc), SentenceLabels(b, doc)));
  }
  return 0;
}

int RunImport(const std::string& input, const std::string& store_dir,
              const std::string& lexicon_path, std::string doc_id) {
  SessionStore store(store_dir);
  if (doc_id.empty()) doc_id = DocIdFromPath(input);
  store.Import(doc_id, ReadTextFile(input), LexiconFrom(lexicon_path));
  std::cout << "imported " << doc_id << " into " << store_dir << "\n";
  return 0;
}

int RunServe(const std::string& host, int port, const std::string& store_dir,
             const std::string& static_dir) {
  SessionStore store(store_dir);
  std::optional<std::filesystem::path> assets;
  if (!static_dir.empty()) assets = static_dir;
  ReviewServer server(store, assets);
  std::cout << "serving " << store.List().size() << " document(s) on http://"
            << host << ":" << port << "/\n"
            << std::flush;
  if (!server.Listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition and recommendation structuring for guideline text"};
  app.require_subcommand(1);

  std::string input, output, lexicon, doc_id;
  auto* segment = app.add_subcommand("segment", "run the pipeline on a text");
  segment->add_option("input", input, "guideline text")->required();
  segment->add_option("-o,--output", output, "output XML")->required();
  segment->add_option("--lexicon", lexicon, "marker lexicon overrides");
  segment->add_option("--doc-id", doc_id, "document id (default: file stem)");

  std::string system_xml, gold_xml, source, report;
  auto* eval = app.add_subcommand("eval", "score a system tree against gold");
  eval->add_option("--system", system_xml, "system XML")->required();
  eval->add_option("--gold", gold_xml, "gold XML")->required();
  eval->add_option("--source", source, "source text")->required();
  eval->add_option("--report", report, "write a JSON report here");

  std::string tree_a, tree_b;
  auto* agree = app.add_subcommand("agree", "agreement between two trees");
  agree->add_option("a", tree_a, "first annotation")->required();
  agree->add_option("b", tree_b, "second annotation")->required();
  agree->add_option("--source", source, "source text")->required();

  std::string store_dir;
  auto* import = app.add_subcommand("import", "add a text to a review store");
  import->add_option("input", input, "guideline text")->required();
  import->add_option("--store", store_dir, "store directory")->required();
  import->add_option("--lexicon", lexicon, "marker lexicon overrides");
  import->add_option("--doc-id", doc_id, "document id (default: file stem)");

  int port = 8080;
  std::string host = "127.0.0.1", static_dir;
  auto* serve = app.add_subcommand("serve", "run the review service");
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--store", store_dir, "store directory")->required();
  serve->add_option("--static", static_dir, "static assets served at /");
  serve->add_option("--host", host, "bind address");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*segment) return RunSegment(input, lexicon, output, doc_id);
    if (*eval) return RunEval(system_xml, gold_xml, source, report);
    if (*agree) return RunAgree(tree_a, tree_b, source);
    if (*import) return RunImport(input, store_dir, lexicon, doc_id);
    if (*serve) return RunServe(host, port, store_dir, static_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
