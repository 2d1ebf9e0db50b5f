#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fqw/blowup.hpp"
#include "fqw/coin.hpp"
#include "fqw/complex_io.hpp"
#include "fqw/dynamics.hpp"
#include "fqw/errors.hpp"
#include "fqw/forest_oracle.hpp"
#include "fqw/rotation_graph.hpp"
#include "fqw/scattering.hpp"
#include "fqw/stationary.hpp"

namespace {

using namespace fqw;

struct CommonOpts {
  std::string graph;
  std::string coin_spec = "d=0.5,omega=1,phi=0";
  std::string coin_matrix;
  std::string inflow_spec = "ones";
  std::string format = "table";
  double tol = 1e-10;
};

double default_tol() {
  if (const char* env = std::getenv("FQW_TOL")) {
    try {
      double v = std::stod(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      throw ParseError("FQW_TOL is not a number");
    }
  }
  return 1e-10;
}

Coin resolve_coin(const CommonOpts& opt) {
  if (!opt.coin_matrix.empty()) {
    std::vector<std::complex<double>> entries;
    std::stringstream ss(opt.coin_matrix);
    std::string item;
    while (std::getline(ss, item, ',')) entries.push_back(parse_complex(item));
    if (entries.size() != 4)
      throw ParseError("--coin-matrix needs four comma-separated entries a,b,c,d");
    return validate_coin(entries[0], entries[1], entries[2], entries[3]);
  }
  double d = 0.5, phi = 0.0;
  std::complex<double> omega = 1.0;
  std::stringstream ss(opt.coin_spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("bad --coin field '" + item + "' (expected key=value)");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "d")
      d = std::stod(val);
    else if (key == "omega")
      omega = parse_unit_complex(val);
    else if (key == "phi")
      phi = std::stod(val);
    else
      throw ParseError("unknown --coin field '" + key + "'");
  }
  return make_coin(d, omega, phi);
}

Eigen::VectorXcd resolve_inflow(const RotationGraph& g, const std::string& spec) {
  const int k = g.boundary_count();
  if (k == 0) throw ValidationError("graph has no tails");
  if (spec == "ones") return Eigen::VectorXcd::Ones(k);
  if (spec.rfind("unit:", 0) == 0) {
    int v = g.vertex_index(spec.substr(5));
    int t = v >= 0 ? g.tail_of_vertex(v) : -1;
    if (t < 0)
      throw ValidationError("inflow vertex '" + spec.substr(5) + "' has no tail");
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(k);
    a[t] = 1.0;
    return a;
  }
  std::vector<std::complex<double>> entries;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) entries.push_back(parse_complex(item));
  if (static_cast<int>(entries.size()) != k)
    throw ValidationError("inflow list needs one entry per tail (" +
                          std::to_string(k) + ")");
  Eigen::VectorXcd a(k);
  for (int i = 0; i < k; ++i) a[i] = entries[i];
  return a;
}

std::string face_tag(const DualGraph& dual, int f) {
  return (dual.faces[f].external ? "f*" : "f") + std::to_string(f);
}

void print_face(const RotationGraph& g, const FacialWalk& f, int id) {
  std::printf("face %d: %s length %d", id, f.external ? "external" : "internal",
              f.length());
  if (f.external) std::printf(" quays %d", f.quay_count());
  std::printf("\n  arcs:");
  for (int a : f.bridge_arcs) std::printf(" %s", g.arc_label(a).c_str());
  std::printf("\n");
  if (f.external) {
    std::printf("  quay vertices:");
    for (int v : f.quay_vertices) std::printf(" %s", g.vertex_name(v).c_str());
    std::printf("   gaps:");
    for (int d : f.gaps()) std::printf(" %d", d);
    std::printf("\n");
  }
}

int cmd_faces(const CommonOpts& opt) {
  RotationGraph g = load_graph(opt.graph);
  auto faces = trace_faces(g);
  if (opt.format == "csv") {
    std::printf("face,kind,length,quays,gaps\n");
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      const auto& f = faces[i];
      std::printf("%d,%s,%d,%d,", i, f.external ? "external" : "internal",
                  f.length(), f.quay_count());
      auto gaps = f.gaps();
      for (size_t j = 0; j < gaps.size(); ++j)
        std::printf("%s%d", j ? " " : "", gaps[j]);
      std::printf("\n");
    }
    return 0;
  }
  std::printf("graph: %s  vertices: %d  edges: %d  tails: %d\n", opt.graph.c_str(),
              g.vertex_count(), g.edge_count(), g.boundary_count());
  std::printf("faces: %zu\n", faces.size());
  for (int i = 0; i < static_cast<int>(faces.size()); ++i)
    print_face(g, faces[i], i);
  std::printf("genus: %d\n", genus(g));
  return 0;
}

int cmd_genus(const CommonOpts& opt) {
  RotationGraph g = load_graph(opt.graph);
  auto faces = trace_faces(g);
  std::printf("faces: %zu  betti: %d  genus: %d\n", faces.size(), g.betti_number(),
              genus(g));
  return 0;
}

int cmd_blowup(const CommonOpts& opt) {
  RotationGraph g = load_graph(opt.graph);
  BlowUpGraph bu = blow_up(g);
  std::printf("blow-up vertices: %d  island arcs: %d  bridge arcs: %d\n",
              bu.bu_vertex_count(), bu.island_arc_count(), bu.bridge_count());
  for (int e = 0; e < bu.arc_count(); ++e)
    std::printf("%s\n", bu.arc_description(e).c_str());
  std::printf("quays:\n");
  for (const auto& q : bu.quays())
    std::printf("  vertex %s : xi_out %d, xi_in %d\n",
                g.vertex_name(q.vertex).c_str(), q.xi_out, q.xi_in);
  std::printf("piers:\n");
  for (const auto& q : bu.quays())
    std::printf("  vertex %s : tail at %s\n", g.vertex_name(q.vertex).c_str(),
                bu.bu_vertex_name(q.bu).c_str());
  return 0;
}

void print_matrix(const Eigen::MatrixXcd& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j)
      std::printf("%s%s", j ? "  " : "  ", format_complex_sci(m(i, j)).c_str());
    std::printf("\n");
  }
}

int run_detect(const RotationGraph& g, const std::vector<FacialWalk>& faces,
               const Coin& coin, const std::string& source, double tol) {
  if (std::abs(coin.omega - 1.0) > 1e-12)
    std::fprintf(stderr,
                 "warning: the detection table N -> embedding was derived for "
                 "omega = 1\n");
  int v = g.vertex_index(source);
  if (v < 0) throw ValidationError("unknown vertex '" + source + "'");
  auto support = detect_embedding(g, faces, coin, v, tol);
  std::printf("outflow support (inflow at %s):", source.c_str());
  for (int u : support) std::printf(" %s", g.vertex_name(u).c_str());
  std::printf("\nN = %zu\n", support.size());
  return 0;
}

int cmd_scatter(const CommonOpts& opt, const std::string& detect_source) {
  RotationGraph g = load_graph(opt.graph);
  auto faces = trace_faces(g);
  Coin coin = resolve_coin(opt);
  ScatteringMatrix sm = scattering_matrix(g, faces, coin);
  for (size_t b = 0; b < sm.blocks.size(); ++b) {
    std::printf("block %zu (face %d), quay order:", b, sm.block_faces[b]);
    for (int t : sm.block_tails[b])
      std::printf(" %s", g.vertex_name(g.boundary_vertices()[t]).c_str());
    std::printf("\n");
    print_matrix(sm.blocks[b]);
  }
  const int n = g.boundary_count();
  double unitarity =
      (sm.full * sm.full.adjoint() - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  std::printf("unitarity residual: %.3e\n", unitarity);
  if (!detect_source.empty()) return run_detect(g, faces, coin, detect_source, opt.tol);
  return 0;
}

int cmd_detect(const CommonOpts& opt, const std::string& source) {
  RotationGraph g = load_graph(opt.graph);
  return run_detect(g, trace_faces(g), resolve_coin(opt), source, opt.tol);
}

int cmd_simulate(const CommonOpts& opt, int max_steps) {
  RotationGraph g = load_graph(opt.graph);
  BlowUpGraph bu = blow_up(g);
  Coin coin = resolve_coin(opt);
  Eigen::VectorXcd alpha = resolve_inflow(g, opt.inflow_spec);
  EvolveResult res = evolve(bu, coin, alpha, opt.tol, max_steps);
  std::printf("step,sup_diff,outflow_norm\n");
  for (size_t i = 0; i < res.sup_diffs.size(); ++i)
    std::printf("%zu,%.12e,%.12e\n", i + 1, res.sup_diffs[i], res.outflow_norms[i]);
  std::printf("converged,%s,steps,%d\n", res.converged ? "true" : "false", res.steps);
  std::printf("arc_kind,arc_index,re,im\n");
  for (int e = 0; e < bu.arc_count(); ++e) {
    auto z = res.state.internal[e];
    std::printf("%s,%d,%.12e,%.12e\n", bu.is_island_arc(e) ? "island" : "bridge",
                e, z.real(), z.imag());
  }
  return 0;
}

StationaryMethod parse_method(const std::string& name) {
  if (name == "gram") return StationaryMethod::Gram;
  if (name == "project") return StationaryMethod::Project;
  if (name == "solve") return StationaryMethod::Solve;
  if (name == "evolve") return StationaryMethod::Evolve;
  throw ParseError("unknown method '" + name + "'");
}

int cmd_stationary(const CommonOpts& opt, const std::string& method_name) {
  RotationGraph g = load_graph(opt.graph);
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin coin = resolve_coin(opt);
  Eigen::VectorXcd alpha = resolve_inflow(g, opt.inflow_spec);
  StationaryMethod method = parse_method(method_name);
  auto dec = stationary_state(bu, dual, coin, alpha, method, opt.tol);

  std::printf("arc_kind,arc_index,amplitude\n");
  for (int e = 0; e < bu.arc_count(); ++e)
    std::printf("%s,%d,%s\n", bu.is_island_arc(e) ? "island" : "bridge", e,
                format_complex(dec.state.internal[e]).c_str());
  std::printf("outflow:");
  for (int t = 0; t < dec.state.outflow.size(); ++t)
    std::printf(" %s", format_complex(dec.state.outflow[t]).c_str());
  std::printf("\ncoefficients:\n");
  for (int f : dec.kernel_faces)
    std::printf("  c[%s] = %s\n", face_tag(dual, f).c_str(),
                format_complex(dec.coefficients[f]).c_str());
  std::printf("luminous faces:");
  for (int f : luminous_faces(dual, dec, opt.tol))
    std::printf(" %s", face_tag(dual, f).c_str());
  std::printf("\northogonality residual: %.3e\n",
              orthogonality_residual(bu, dual, coin, dec));
  ArcState reference = fixed_point_solve(bu, coin, alpha);
  std::printf("cross-method residual vs solve: %.3e\n",
              (dec.state.internal - reference.internal).lpNorm<Eigen::Infinity>());
  return 0;
}

int cmd_oracle(const CommonOpts& opt, bool list_members) {
  RotationGraph g = load_graph(opt.graph);
  auto dual = dual_graph(g, trace_faces(g));
  Coin coin = resolve_coin(opt);
  PointedDual pd = pointed_dual(dual, coin);
  const int p = pd.vertex_count() - 1;

  if (list_members) {
    auto dump = [&](const std::vector<std::uint32_t>& members) {
      for (auto mask : members) {
        std::printf("  {");
        bool first = true;
        for (int e = 0; e < pd.edge_count(); ++e)
          if (mask >> e & 1) {
            const auto& ed = pd.edges[e];
            std::printf("%s%s-%s%s", first ? "" : ", ",
                        face_tag(dual, pd.vertices[ed.u]).c_str(),
                        face_tag(dual, pd.vertices[ed.v]).c_str(),
                        ed.loop ? "@" : "");
            first = false;
          }
        std::printf("}  weight %.12g\n", subgraph_weight(pd, mask));
      }
    };
    std::printf("H1 members (%zu):\n", enumerate_family_h1(pd).size());
    dump(enumerate_family_h1(pd));
    for (int f = 0; f < p; ++f)
      for (int gg = f; gg < p; ++gg) {
        auto fam = enumerate_family_h2(pd, f, gg);
        std::printf("H2(%s,%s) members (%zu):\n",
                    face_tag(dual, pd.vertices[f]).c_str(),
                    face_tag(dual, pd.vertices[gg]).c_str(), fam.size());
        dump(fam);
      }
  }

  std::printf("iota1 = %.12g\n", iota1(pd));
  std::printf("iota2:\n");
  for (int f = 0; f < p; ++f) {
    std::printf("  ");
    for (int gg = 0; gg < p; ++gg) std::printf(" %.12g", iota2(pd, f, gg));
    std::printf("\n");
  }
  Eigen::MatrixXd comb = gram_inverse_combinatorial(pd);
  Eigen::MatrixXd direct = gram_matrix(dual, coin).inverse();
  std::printf("combinatorial M^-1:\n");
  for (int i = 0; i < p; ++i) {
    std::printf("  ");
    for (int j = 0; j < p; ++j) std::printf(" %.12g", comb(i, j));
    std::printf("\n");
  }
  std::printf("direct M^-1:\n");
  for (int i = 0; i < p; ++i) {
    std::printf("  ");
    for (int j = 0; j < p; ++j) std::printf(" %.12g", direct(i, j));
    std::printf("\n");
  }
  std::printf("max discrepancy: %.3e\n", (comb - direct).cwiseAbs().maxCoeff());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"facial quantum walks on embedded graphs"};
  app.require_subcommand(1);

  CommonOpts opt;
  try {
    opt.tol = default_tol();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  auto add_common = [&](CLI::App* sub, bool needs_coin = true) {
    sub->add_option("--graph", opt.graph, "built-in name or graph file path")
        ->required();
    if (needs_coin) {
      sub->add_option("--coin", opt.coin_spec, "d=<real>,omega=<spec>,phi=<real>");
      sub->add_option("--coin-matrix", opt.coin_matrix, "a,b,c,d complex entries");
    }
    sub->add_option("--tol", opt.tol, "tolerance (or env FQW_TOL)");
    sub->add_option("--format", opt.format, "table|csv");
  };

  auto* faces = app.add_subcommand("faces", "trace facial walks");
  add_common(faces, false);
  auto* genus_cmd = app.add_subcommand("genus", "genus of the underlying surface");
  add_common(genus_cmd, false);
  auto* blowup_cmd = app.add_subcommand("blowup", "dump the blow-up digraph");
  add_common(blowup_cmd, false);

  std::string detect_source;
  auto* scatter = app.add_subcommand("scatter", "scattering matrix blocks");
  add_common(scatter);
  scatter->add_option("--detect", detect_source, "support experiment source vertex");

  std::string source;
  auto* detect = app.add_subcommand("detect", "embedding detection experiment");
  add_common(detect);
  detect->add_option("--source", source, "source vertex")->required();

  int max_steps = 100000;
  auto* simulate = app.add_subcommand("simulate", "iterate the walk, emit CSV");
  add_common(simulate);
  simulate->add_option("--inflow", opt.inflow_spec, "ones|unit:<vertex>|<list>");
  simulate->add_option("--max-steps", max_steps, "iteration cap");

  std::string method = "project";
  auto* stationary = app.add_subcommand("stationary", "stationary state");
  add_common(stationary);
  stationary->add_option("--inflow", opt.inflow_spec, "ones|unit:<vertex>|<list>");
  stationary->add_option("--method", method, "gram|project|solve|evolve");

  bool list_members = false;
  auto* oracle = app.add_subcommand("oracle", "spanning-subgraph inverse-Gram oracle");
  add_common(oracle);
  oracle->add_flag("--list", list_members, "dump every family member");

  CLI11_PARSE(app, argc, argv);

  try {
    if (faces->parsed()) return cmd_faces(opt);
    if (genus_cmd->parsed()) return cmd_genus(opt);
    if (blowup_cmd->parsed()) return cmd_blowup(opt);
    if (scatter->parsed()) return cmd_scatter(opt, detect_source);
    if (detect->parsed()) return cmd_detect(opt, source);
    if (simulate->parsed()) return cmd_simulate(opt, max_steps);
    if (stationary->parsed()) return cmd_stationary(opt, method);
    if (oracle->parsed()) return cmd_oracle(opt, list_members);
  } catch (const InternalError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
