#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "annulus/annulus.h"

namespace {

// Exit codes: 0 success, 1..8 the library status, 9 golden mismatch,
// 10 command line usage.
constexpr int kGoldenMismatch = 9;
constexpr int kUsage = 10;

struct Failure {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: io_error: cannot read " << path << "\n";
    throw Failure{ANNULUS_IO_ERROR};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(annulus_status s) {
  if (s == ANNULUS_OK) return;
  std::cerr << "error: " << annulus_status_name(s) << ": " << annulus_last_error() << "\n";
  throw Failure{static_cast<int>(s)};
}

// p from the document when the command line leaves it out.
int doc_p(const std::string& text, int fallback) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_object() && j.contains("p") && j["p"].is_number_integer()) return j["p"].get<int>();
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annular representations of domain walls in the Z/p toric code"};
  app.require_subcommand(1);
  app.fallthrough();
  int p = 2;
  std::string format = "text";
  auto* p_opt = app.add_option("-p,--prime", p, "prime p (default 2)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.set_version_flag("--version", std::string(annulus_version()));

  std::string structure_path;
  auto* decompose = app.add_subcommand("decompose", "decompose a domain wall structure document");
  decompose->add_option("structure", structure_path, "structure JSON file")->required();

  std::string below, above;
  auto* fv = app.add_subcommand("fuse-vertical", "fuse two stacked defects on one wall");
  fv->add_option("below", below, "lower defect, e.g. RFr(x=1;r=2)")->required();
  fv->add_option("above", above, "upper defect")->required();

  std::string left, right;
  std::optional<int> mu, nu;
  auto* fh = app.add_subcommand("fuse-horizontal", "fuse two side by side defects");
  fh->add_option("left", left, "left defect")->required();
  fh->add_option("right", right, "right defect")->required();
  fh->add_option("--mu", mu, "corner at the split vertex (default: all)");
  fh->add_option("--nu", nu, "corner at the merge vertex (default: all)");

  std::string wm, wn, wp, assoc_golden;
  bool assoc_table = false;
  auto* assoc = app.add_subcommand("associator", "associator for a triple of walls");
  assoc->add_option("M", wm, "wall M, e.g. T, L, R, F0, Fq:2, Xk:1");
  assoc->add_option("N", wn, "wall N");
  assoc->add_option("P", wp, "wall P");
  assoc->add_flag("--table", assoc_table, "all triples (same as: table associator)");
  assoc->add_option("--golden", assoc_golden, "with --table, compare with a golden JSON file");

  std::string kind, golden;
  auto* table = app.add_subcommand("table", "generate a full table");
  table->add_option("kind", kind, "associator, vertical or horizontal")
      ->required()
      ->check(CLI::IsMember({"associator", "vertical", "horizontal"}));
  table->add_option("--golden", golden, "compare the associator table with a golden JSON file");

  std::string patch_path;
  auto* lw = app.add_subcommand("lw", "analyze a lattice model patch");
  lw->add_option("patch", patch_path, "patch JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  bool json = format == "json";
  annulus_engine* engine = nullptr;
  annulus_result* result = nullptr;
  int rc = 0;
  try {
    std::string doc;
    if (decompose->parsed()) doc = read_file(structure_path);
    if (lw->parsed()) doc = read_file(patch_path);
    if (!doc.empty() && p_opt->count() == 0) p = doc_p(doc, p);
    check(annulus_engine_create(p, &engine));

    if (decompose->parsed()) {
      check(annulus_decompose(engine, doc.c_str(), &result));
    } else if (fv->parsed()) {
      check(annulus_fuse_vertical(engine, below.c_str(), above.c_str(), &result));
    } else if (fh->parsed()) {
      int m = mu.value_or(0), n = nu.value_or(0);
      check(annulus_fuse_horizontal(engine, left.c_str(), right.c_str(), mu ? &m : nullptr,
                                    nu ? &n : nullptr, &result));
    } else if (assoc->parsed() && !assoc_table) {
      if (wm.empty() || wn.empty() || wp.empty() || !assoc_golden.empty()) {
        std::cerr << "error: associator needs three walls, or --table\n";
        throw Failure{kUsage};
      }
      check(annulus_associator(engine, wm.c_str(), wn.c_str(), wp.c_str(), &result));
    } else if (table->parsed() || assoc->parsed()) {
      if (assoc->parsed()) {
        if (!wm.empty()) {
          std::cerr << "error: --table takes no walls\n";
          throw Failure{kUsage};
        }
        kind = "associator";
        golden = assoc_golden;
      }
      if (!golden.empty()) {
        if (kind != "associator") {
          std::cerr << "error: --golden applies to the associator table\n";
          throw Failure{kUsage};
        }
        std::string g = read_file(golden);
        check(annulus_compare_golden(engine, g.c_str(), &result));
        auto j = nlohmann::json::parse(annulus_result_json(result));
        if (!j["matches"].get<bool>()) rc = kGoldenMismatch;
      } else {
        check(annulus_table(engine, kind.c_str(), &result));
      }
    } else if (lw->parsed()) {
      check(annulus_lw_analyze(engine, doc.c_str(), &result));
    }
    std::fputs(json ? annulus_result_json(result) : annulus_result_text(result), stdout);
  } catch (const Failure& f) {
    rc = f.code;
  }
  annulus_result_destroy(result);
  annulus_engine_destroy(engine);
  return rc;
}
