#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <variant>

#include "json_io.hpp"
#include "loopspace/curve.hpp"
#include "loopspace/edge_word.hpp"
#include "loopspace/embedder.hpp"
#include "loopspace/errors.hpp"
#include "loopspace/inscribed.hpp"
#include "loopspace/pair_space.hpp"

namespace loopspace::cli {

namespace {

using nlohmann::json;

const CLI::IsMember kSchemeNames({"torus", "pinched-sphere", "mobius"});

// Shortest decimal that round-trips to the same double.
std::string shortest(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

void print_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

struct Arguments {
  std::string word;
  std::string scheme;
  double x = 0.0;
  double y = 0.0;
  int resolution = 32;
  std::string out_file;
  EmbedConfig embed;
  std::string curve;
  int grid = 256;
  double tol = 1e-8;
  double min_sep = 1e-3;
  std::optional<double> aspect;
  int samples = 256;
};

int run_classify(const Arguments& a, std::ostream& out) {
  const SurfaceClass c = classify(parse_edge_word(a.word));
  json j = io::to_json(c);
  j["word"] = to_string(parse_edge_word(a.word));
  print_json(out, j);
  return kSuccess;
}

int run_mesh(const Arguments& a, std::ostream& out) {
  const Scheme scheme = parse_scheme(a.scheme);
  const Mesh mesh = build_mesh(scheme, a.resolution, a.embed);
  const MeshInvariants inv = mesh_invariants(mesh);
  if (!a.out_file.empty()) {
    std::ofstream file(a.out_file);
    if (!file) throw InputError("cannot open '" + a.out_file + "' for writing");
    export_obj(mesh, file);
  }
  json j = io::to_json(inv);
  j["scheme"] = std::string(scheme_name(scheme));
  j["resolution"] = a.resolution;
  print_json(out, j);
  return kSuccess;
}

int run_encode(const Arguments& a, std::ostream& out) {
  const Scheme scheme = parse_scheme(a.scheme);
  const QuotientPoint q = canonicalize(scheme, a.x, a.y);
  const Vec3 p = embed(q, a.embed);
  json j = io::to_json(q);
  j["embedding"] = {p.x, p.y, p.z};
  print_json(out, j);
  return kSuccess;
}

int run_decode(const Arguments& a, std::ostream& out) {
  const QuotientPoint q = make_quotient_point(parse_scheme(a.scheme), a.x, a.y);
  const DecodedPair d = decode(q);
  print_json(out, {{"scheme", std::string(scheme_name(q.scheme))},
                   {"pair", {d.pair.a.value(), d.pair.b.value()}},
                   {"ordered", d.pair.ordered},
                   {"pole", d.pole}});
  return kSuccess;
}

int run_rect(const Arguments& a, std::ostream& out) {
  const ClosedCurve curve = parse_curve_spec(a.curve);
  RectangleOptions opts;
  opts.grid_n = a.grid;
  opts.tol = a.tol;
  opts.min_separation = a.min_sep;
  opts.aspect_ratio = a.aspect;
  const RectangleResult result = find_rectangle(curve, opts);
  if (const auto* w = std::get_if<RectangleWitness>(&result)) {
    json j = io::to_json(*w);
    j["found"] = true;
    print_json(out, j);
  } else {
    print_json(out, {{"found", false}, {"best_residual", std::get<NotFound>(result).best_residual}});
  }
  return kSuccess;
}

int run_curve_sample(const Arguments& a, std::ostream& out) {
  const ClosedCurve curve = parse_curve_spec(a.curve);
  if (a.samples < 1) throw InputError("--n must be positive");
  out << "x,y\n";
  for (int k = 0; k < a.samples; ++k) {
    const Vec2 p = curve.eval(static_cast<double>(k) / a.samples);
    out << shortest(p.x) << ',' << shortest(p.y) << '\n';
  }
  return kSuccess;
}

void add_embed_flags(CLI::App* cmd, Arguments& a) {
  cmd->add_option("--R", a.embed.major_radius, "Major radius")->capture_default_str();
  cmd->add_option("--r", a.embed.minor_radius, "Minor radius")->capture_default_str();
  cmd->add_option("--w", a.embed.half_width, "Mobius band half width")->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Arguments a;
  CLI::App app{"Configuration spaces of point pairs on a loop: glued squares, surfaces and inscribed rectangles",
               "loopspace"};
  app.require_subcommand(1, 1);

  auto* classify_cmd = app.add_subcommand("classify", "Classify the surface of a fundamental-polygon edge word");
  classify_cmd->add_option("word", a.word, "Edge word, e.g. abAB")->required();

  auto* mesh_cmd = app.add_subcommand("mesh", "Build a welded mesh of a glued square and report its invariants");
  mesh_cmd->add_option("scheme", a.scheme, "torus | pinched-sphere | mobius")->required()->check(kSchemeNames);
  mesh_cmd->add_option("--resolution", a.resolution, "Grid cells per side (>= 3)")->required();
  mesh_cmd->add_option("--out", a.out_file, "Write the mesh as OBJ to this file");
  add_embed_flags(mesh_cmd, a);

  auto* encode_cmd = app.add_subcommand("encode", "Canonical quotient point of a square point (pair of loop positions)");
  encode_cmd->add_option("scheme", a.scheme, "torus | pinched-sphere | mobius")->required()->check(kSchemeNames);
  encode_cmd->add_option("x", a.x, "First coordinate")->required();
  encode_cmd->add_option("y", a.y, "Second coordinate")->required();
  add_embed_flags(encode_cmd, a);

  auto* decode_cmd = app.add_subcommand("decode", "Representative pair of a canonical quotient point");
  decode_cmd->add_option("scheme", a.scheme, "torus | pinched-sphere | mobius")->required()->check(kSchemeNames);
  decode_cmd->add_option("u", a.x, "First chart coordinate")->required();
  decode_cmd->add_option("v", a.y, "Second chart coordinate")->required();

  auto* rect_cmd = app.add_subcommand("rect", "Search for an inscribed rectangle");
  rect_cmd->add_option("--curve", a.curve, "circle:r | ellipse:a,b | superellipse:a,b,p | file:PATH.csv")->required();
  rect_cmd->add_option("--grid", a.grid, "Samples per side of the Mobius grid (>= 16)")->capture_default_str();
  rect_cmd->add_option("--tol", a.tol, "Residual tolerance")->capture_default_str();
  rect_cmd->add_option("--min-sep", a.min_sep, "Minimum separation of the two diagonals")->capture_default_str();
  rect_cmd->add_option("--aspect", a.aspect, "Preferred side ratio (best effort)");

  auto* sample_cmd = app.add_subcommand("curve-sample", "Sample a curve at equal arc-length steps as CSV");
  sample_cmd->add_option("--curve", a.curve, "circle:r | ellipse:a,b | superellipse:a,b,p | file:PATH.csv")->required();
  sample_cmd->add_option("--n", a.samples, "Number of samples")->required();

  std::vector<const char*> argv{"loopspace"};
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*classify_cmd) {
      try {
        return run_classify(a, out);
      } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
    }
    if (*mesh_cmd) return run_mesh(a, out);
    if (*encode_cmd) return run_encode(a, out);
    if (*decode_cmd) return run_decode(a, out);
    if (*rect_cmd) return run_rect(a, out);
    if (*sample_cmd) return run_curve_sample(a, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternalError;
  }
  err << "error: no subcommand\n";
  return kUsageError;
}

} // namespace loopspace::cli
