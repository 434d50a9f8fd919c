#include "annulus/annulus.h"

#include <functional>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "fusion.hpp"
#include "levinwen.hpp"

struct annulus_engine {
  annulus::Context ctx;
};

struct annulus_result {
  std::string json;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

annulus_status status_of(annulus::ErrorCode c) { return static_cast<annulus_status>(c); }

annulus_status guard(const std::function<void()>& body) {
  try {
    body();
    g_last_error.clear();
    return ANNULUS_OK;
  } catch (const annulus::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ANNULUS_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ANNULUS_SIZE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ANNULUS_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) annulus::fail(annulus::ErrorCode::invalid_argument, what);
}

annulus_result* make_result(const nlohmann::json& j, std::string text) {
  return new annulus_result{j.dump(2) + "\n", std::move(text)};
}

annulus_result* fusion_result(const annulus::FusionResult& r) {
  return make_result(annulus::to_json(r), annulus::render_text(r));
}

void check_doc_p(const std::string& text, int p) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    annulus::fail(annulus::ErrorCode::parse, e.what());
  }
  if (j.is_object() && j.contains("p") && j["p"] != p)
    annulus::fail(annulus::ErrorCode::invalid_argument,
                  "document p differs from the engine p = " + std::to_string(p));
}

}  // namespace

extern "C" {

const char* annulus_version(void) { return "1.0.0"; }

const char* annulus_status_name(annulus_status s) {
  switch (s) {
    case ANNULUS_OK: return "ok";
    case ANNULUS_INVALID_ARGUMENT: return "invalid_argument";
    case ANNULUS_PARSE_ERROR: return "parse_error";
    case ANNULUS_WALL_MISMATCH: return "wall_mismatch";
    case ANNULUS_UNSUPPORTED: return "unsupported";
    case ANNULUS_SIZE_LIMIT: return "size_limit";
    case ANNULUS_NOT_INVERTIBLE: return "not_invertible";
    case ANNULUS_IO_ERROR: return "io_error";
    case ANNULUS_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* annulus_last_error(void) { return g_last_error.c_str(); }

annulus_status annulus_engine_create(int p, annulus_engine** out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = nullptr;
    if (!annulus::is_prime(p))
      annulus::fail(annulus::ErrorCode::invalid_argument, "p must be prime, got " + std::to_string(p));
    *out = new annulus_engine{annulus::Context(p)};
  });
}

void annulus_engine_destroy(annulus_engine* e) { delete e; }

int annulus_engine_p(const annulus_engine* e) { return e ? e->ctx.p() : 0; }

annulus_status annulus_decompose(annulus_engine* e, const char* structure_json,
                                 annulus_result** out) {
  return guard([&] {
    require(e && structure_json && out, "null argument");
    *out = nullptr;
    std::string text(structure_json);
    check_doc_p(text, e->ctx.p());
    auto cd = annulus::parse_structure(text);
    require(cd->context().p() == e->ctx.p(), "structure p differs from the engine p");
    std::vector<std::string> inputs;
    for (const auto& v : cd->vertices()) inputs.push_back(v.rep->label());
    *out = fusion_result(annulus::decompose_structure(cd, inputs));
  });
}

annulus_status annulus_fuse_vertical(annulus_engine* e, const char* below, const char* above,
                                     annulus_result** out) {
  return guard([&] {
    require(e && below && above && out, "null argument");
    *out = nullptr;
    int p = e->ctx.p();
    *out = fusion_result(annulus::vertical_fuse(e->ctx, annulus::parse_defect(below, p),
                                                annulus::parse_defect(above, p)));
  });
}

annulus_status annulus_fuse_horizontal(annulus_engine* e, const char* left, const char* right,
                                       const int* mu, const int* nu, annulus_result** out) {
  return guard([&] {
    require(e && left && right && out, "null argument");
    *out = nullptr;
    int p = e->ctx.p();
    std::optional<int> m, n;
    if (mu) m = *mu;
    if (nu) n = *nu;
    *out = fusion_result(annulus::horizontal_fuse(e->ctx, annulus::parse_defect(left, p),
                                                  annulus::parse_defect(right, p), m, n));
  });
}

annulus_status annulus_associator(annulus_engine* e, const char* m, const char* n,
                                  const char* p_wall, annulus_result** out) {
  return guard([&] {
    require(e && m && n && p_wall && out, "null argument");
    *out = nullptr;
    int p = e->ctx.p();
    *out = fusion_result(annulus::associator(e->ctx, annulus::parse_wall(m, p),
                                             annulus::parse_wall(n, p),
                                             annulus::parse_wall(p_wall, p)));
  });
}

annulus_status annulus_table(annulus_engine* e, const char* kind, annulus_result** out) {
  return guard([&] {
    require(e && kind && out, "null argument");
    *out = nullptr;
    auto t = annulus::generate_table(annulus::parse_table_kind(kind), e->ctx.p());
    *out = make_result(t, annulus::render_table_text(t));
  });
}

annulus_status annulus_compare_golden(annulus_engine* e, const char* golden_json,
                                      annulus_result** out) {
  return guard([&] {
    require(e && golden_json && out, "null argument");
    *out = nullptr;
    nlohmann::json golden;
    try {
      golden = nlohmann::json::parse(golden_json);
    } catch (const nlohmann::json::exception& ex) {
      annulus::fail(annulus::ErrorCode::parse, std::string("golden: ") + ex.what());
    }
    auto t = annulus::generate_table(annulus::TableKind::associator, e->ctx.p());
    auto diffs = annulus::compare_associator_golden(t, golden);
    nlohmann::json j{{"p", e->ctx.p()}, {"matches", diffs.empty()}, {"differences", diffs}};
    std::string text = diffs.empty() ? "golden: match\n"
                                     : "golden: " + std::to_string(diffs.size()) + " differences\n";
    for (const auto& d : diffs) text += "  " + d + "\n";
    *out = make_result(j, text);
  });
}

annulus_status annulus_lw_analyze(annulus_engine* e, const char* patch_json, annulus_result** out) {
  return guard([&] {
    require(e && patch_json && out, "null argument");
    *out = nullptr;
    std::string text(patch_json);
    check_doc_p(text, e->ctx.p());
    auto j = nlohmann::json::parse(text);
    j["p"] = e->ctx.p();
    auto r = annulus::analyze_patch(j.dump());
    *out = make_result(r, annulus::render_patch_report(r));
  });
}

const char* annulus_result_json(const annulus_result* r) { return r ? r->json.c_str() : ""; }
const char* annulus_result_text(const annulus_result* r) { return r ? r->text.c_str() : ""; }
void annulus_result_destroy(annulus_result* r) { delete r; }

}  // extern "C"
