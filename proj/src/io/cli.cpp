#include "duality/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "duality/graph.hpp"
#include "duality/io.hpp"
#include "duality/kernels.hpp"
#include "duality/methods.hpp"

namespace duality::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kNearTie = 1e-3;

struct Options {
  std::vector<std::string> inputs;
  std::optional<int> axes;
  std::string out;
  std::string delimiter;
  std::string weights;
  bool standardize = false;
  bool per_component = false;
  int k = 2;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::optional<char> delimiter_of(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "," || s == "comma") return ',';
  if (s == "\t" || s == "\\t" || s == "tab") return '\t';
  throw UsageError("--delimiter must be ',' or tab, got '" + s + "'");
}

fs::path stem_of(const Options& o) {
  if (!o.out.empty()) return o.out;
  fs::path p(o.inputs.front());
  return p.parent_path() / p.stem();
}

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  fs::path p = stem;
  p += suffix;
  return p;
}

std::vector<std::string> axis_labels(Index q, const std::string& prefix = "axis") {
  std::vector<std::string> out;
  for (Index i = 1; i <= q; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Reorders `ds` so its rows follow `labels`.
void align_rows(io::Dataset& ds, const std::vector<std::string>& labels, const std::string& what) {
  if (ds.row_labels == labels) return;
  if (ds.row_labels.size() != labels.size())
    throw Error(Errc::dimension_mismatch, what + " has " + std::to_string(ds.row_labels.size()) +
                                              " rows, expected " + std::to_string(labels.size()));
  std::map<std::string, Index> pos;
  for (std::size_t i = 0; i < ds.row_labels.size(); ++i) pos[ds.row_labels[i]] = static_cast<Index>(i);
  std::vector<Index> order;
  for (const auto& l : labels) {
    const auto it = pos.find(l);
    if (it == pos.end()) throw Error(Errc::parse, what + " has no row labelled '" + l + "'");
    order.push_back(it->second);
  }
  ds.matrix = Matrix(ds.matrix(order, Eigen::all));
  ds.row_labels = labels;
}

std::optional<Vector> weights_for(const Options& o, const std::vector<std::string>& rows) {
  if (o.weights.empty()) return std::nullopt;
  return io::read_weights(o.weights, rows, delimiter_of(o.delimiter));
}

std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string s;
  for (const auto& [k, v] : entries) s += k + ": " + v + "\n";
  return s;
}

struct Report {
  std::string method;
  MethodResult result;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::pair<std::string, std::string>> manifest;
};

void warn_near_tie(const Vector& spectrum, Index q, std::ostream& err) {
  if (splits_near_tie(spectrum, q, kNearTie))
    err << "WARNING: eigenvalues " << q << " (" << fixed(spectrum(q - 1), 6) << ") and " << q + 1
        << " (" << fixed(spectrum(q), 6)
        << ") are nearly equal; keeping " << q
        << " axes separates them, and the individual axes are unstable (only their span is)\n";
}

int emit(const Report& rep, const Options& o, std::ostream& out, std::ostream& err) {
  const auto& res = rep.result;
  const Index rank = res.decomposition.rank;
  out << io::format_scree(res.scree);
  out << "rank: " << rank << "\n";
  if (!o.axes) {
    out << "no --axes given: inspect the eigenvalues above, then rerun with --axes <q> to "
           "write coordinates\n";
    return kExitOk;
  }
  const Index q = *o.axes;
  if (q > rank)
    throw Error(Errc::invalid_argument, "--axes " + std::to_string(q) + " exceeds the " +
                                            std::to_string(rank) + " nonzero eigenvalues");
  warn_near_tie(res.decomposition.spectrum, q, err);
  out << "cumulative inertia at " << q << (q == 1 ? " axis: " : " axes: ")
      << fixed(res.scree.rows[static_cast<std::size_t>(q - 1)].cumulative_pct, 2) << "%\n";

  const fs::path stem = stem_of(o);
  const auto labels = axis_labels(q);
  io::write_file_atomic(with_suffix(stem, "_scree.tsv"), io::format_scree_tsv(res.scree));
  io::write_file_atomic(with_suffix(stem, "_rows.tsv"),
                        io::format_matrix_tsv(res.row_coords.leftCols(q), rep.row_labels, labels));
  io::write_file_atomic(with_suffix(stem, "_cols.tsv"),
                        io::format_matrix_tsv(res.col_coords.leftCols(q), rep.col_labels, labels));

  std::vector<std::pair<std::string, std::string>> m = {{"method", rep.method}};
  for (std::size_t i = 0; i < o.inputs.size(); ++i)
    m.emplace_back("input" + std::to_string(i + 1), o.inputs[i]);
  m.emplace_back("axes", std::to_string(q));
  m.emplace_back("rank", std::to_string(rank));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", res.decomposition.inertia);
  m.emplace_back("inertia", buf);
  if (rep.method != "ca") m.emplace_back("weights", o.weights.empty() ? "uniform" : o.weights);
  m.insert(m.end(), rep.manifest.begin(), rep.manifest.end());
  m.emplace_back("zero_eigenvalue_threshold", "1e-12");
  m.emplace_back("tie_threshold", "1e-9");
  m.emplace_back("near_tie_warning_threshold", "1e-3");
  m.emplace_back("kernel_backend", std::string(kernels::backend_name(kernels::active().backend)));
  io::write_file_atomic(with_suffix(stem, "_manifest.txt"), manifest_text(m));
  out << "wrote " << with_suffix(stem, "_{scree,rows,cols}.tsv").string() << " and "
      << with_suffix(stem, "_manifest.txt").string() << "\n";
  return kExitOk;
}

void print_warnings(const io::Dataset& ds, std::ostream& err) {
  for (const auto& w : ds.warnings) err << "warning: " << w << "\n";
}

int run_pca(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ds = io::read_table(o.inputs[0], io::DatasetKind::measurements, delimiter_of(o.delimiter));
  PcaOptions po;
  po.standardize = o.standardize;
  po.weights = weights_for(o, ds.row_labels);
  po.column_labels = ds.col_labels;
  Report rep{"pca", pca(ds.matrix, po), ds.row_labels, ds.col_labels,
             {{"standardize", o.standardize ? "true" : "false"}}};
  return emit(rep, o, out, err);
}

int run_ca(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ds = io::read_table(o.inputs[0], io::DatasetKind::contingency, delimiter_of(o.delimiter));
  print_warnings(ds, err);
  const auto table = ContingencyTable::make(ds.matrix, ds.row_labels, ds.col_labels);
  Report rep{"ca", ca(table), ds.row_labels, ds.col_labels, {}};
  const auto& ex = std::get<CaExtras>(rep.result.extras);
  out << "chi-square: " << fixed(ex.chi_square, 4) << " (dof " << ex.dof << ", n "
      << fixed(ex.total_count, 0) << ")\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", ex.chi_square);
  rep.manifest.emplace_back("chi_square", buf);
  rep.manifest.emplace_back("dof", std::to_string(ex.dof));
  return emit(rep, o, out, err);
}

int run_lda(const Options& o, std::ostream& out, std::ostream& err) {
  const auto delim = delimiter_of(o.delimiter);
  const auto ds = io::read_table(o.inputs[0], io::DatasetKind::measurements, delim);
  auto groups = io::read_table(o.inputs[1], io::DatasetKind::groups, delim);
  align_rows(groups, ds.row_labels, o.inputs[1]);
  const auto coding = GroupCoding::from_indicator(groups.matrix, groups.col_labels);
  Report rep{"lda", lda(ds.matrix, coding, weights_for(o, ds.row_labels)), ds.row_labels,
             ds.col_labels, {{"groups", std::to_string(coding.groups())}}};
  const auto& ex = std::get<LdaExtras>(rep.result.extras);
  out << "Huyghens residual max|T - B - W| / max|T|: " << ex.huyghens_residual << "\n";
  return emit(rep, o, out, err);
}

int run_pcaiv(const Options& o, std::ostream& out, std::ostream& err) {
  const auto delim = delimiter_of(o.delimiter);
  const auto xs = io::read_table(o.inputs[0], io::DatasetKind::measurements, delim);
  auto ys = io::read_table(o.inputs[1], io::DatasetKind::measurements, delim);
  align_rows(ys, xs.row_labels, o.inputs[1]);
  PcaivOptions po;
  po.weights = weights_for(o, xs.row_labels);
  Report rep{"pcaiv", pcaiv(xs.matrix, ys.matrix, po), xs.row_labels, xs.col_labels, {}};
  return emit(rep, o, out, err);
}

int run_cca(const Options& o, std::ostream& out, std::ostream& err) {
  const auto delim = delimiter_of(o.delimiter);
  const auto a = io::read_table(o.inputs[0], io::DatasetKind::measurements, delim);
  auto b = io::read_table(o.inputs[1], io::DatasetKind::measurements, delim);
  align_rows(b, a.row_labels, o.inputs[1]);
  std::vector<std::string> cols = a.col_labels;
  cols.insert(cols.end(), b.col_labels.begin(), b.col_labels.end());
  Report rep{"cca", cca(a.matrix, b.matrix, weights_for(o, a.row_labels)), a.row_labels, cols, {}};
  const auto& ex = std::get<CcaExtras>(rep.result.extras);
  out << "canonical correlations:";
  for (Index i = 0; i < ex.canonical_correlations.size(); ++i)
    out << " " << fixed(ex.canonical_correlations(i), 5);
  out << "\n";
  return emit(rep, o, out, err);
}

io::Dataset covariates_for(const Graph& g, const Options& o) {
  auto ds = io::read_table(o.inputs[1], io::DatasetKind::measurements, delimiter_of(o.delimiter));
  align_rows(ds, g.labels(), o.inputs[1]);
  return ds;
}

int run_geary(const Options& o, std::ostream& out, std::ostream&) {
  const Graph g = io::read_edges(o.inputs[0], delimiter_of(o.delimiter));
  const auto ds = covariates_for(g, o);
  const Vector loc = local_variance(g, ds.matrix);
  const Vector tot = total_variance(ds.matrix);
  const Vector classical = geary_classical(g, ds.matrix);
  out << "variable\tgeary_c\tlocal_variance\tvariance\tgeary_classical\n";
  for (Index j = 0; j < ds.matrix.cols(); ++j) {
    // degree-weighted centering makes c(x) ignore a constant shift
    const Vector x = ds.matrix.col(j).array() -
                     g.degrees().dot(ds.matrix.col(j)) / g.total_degree();
    const bool flat = x.cwiseAbs().maxCoeff() == 0.0;
    out << ds.col_labels[static_cast<std::size_t>(j)] << "\t"
        << (flat ? std::string("nan") : fixed(geary(g, x), 6)) << "\t" << fixed(loc(j), 6) << "\t"
        << fixed(tot(j), 6) << "\t" << fixed(classical(j), 6) << "\n";
  }
  return kExitOk;
}

void print_mu_table(const Vector& mu, std::ostream& out) {
  out << "axis\tmu\t1-mu\n";
  for (Index i = 0; i < mu.size(); ++i)
    out << i + 1 << "\t" << fixed(mu(i), 5) << "\t" << fixed(1.0 - mu(i), 5) << "\n";
}

void warn_mu_tie(const Vector& mu, Index q, std::ostream& err) {
  if (q < 1 || q >= mu.size()) return;
  if (mu(q) - mu(q - 1) <= kNearTie * std::max(mu(q), 1e-300))
    err << "WARNING: graph eigenvalues " << q << " (" << fixed(mu(q - 1), 6) << ") and " << q + 1
        << " (" << fixed(mu(q), 6) << ") are nearly equal; keeping " << q
        << " axes separates them, and the individual axes are unstable (only their span is)\n";
}

int run_layout(const Options& o, std::ostream& out, std::ostream& err) {
  const Graph g = io::read_edges(o.inputs[0], delimiter_of(o.delimiter));
  if (!o.per_component) {
    const GraphSpectrum full = spectrum(g, g.nodes() - 1);
    print_mu_table(full.mu, out);
    if (!o.axes) {
      out << "no --axes given: inspect the eigenvalues above, then rerun with --axes <q> to "
             "write coordinates\n";
      return kExitOk;
    }
    const Index q = *o.axes;
    if (q > g.nodes() - 1)
      throw Error(Errc::invalid_argument, "--axes " + std::to_string(q) + " exceeds the " +
                                              std::to_string(g.nodes() - 1) + " nontrivial axes");
    warn_mu_tie(full.mu, q, err);
    const GraphSpectrum s = spectrum(g, q);
    const fs::path stem = stem_of(o);
    const auto labels = axis_labels(q);
    Matrix mu_table(q, 2);
    mu_table.col(0) = s.mu;
    mu_table.col(1) = (1.0 - s.mu.array()).matrix();
    io::write_file_atomic(with_suffix(stem, "_rows.tsv"),
                          io::format_matrix_tsv(scaled_coordinates(s), g.labels(), labels));
    io::write_file_atomic(with_suffix(stem, "_cols.tsv"),
                          io::format_matrix_tsv(mu_table, labels, {"mu", "one_minus_mu"}, "axis"));
    io::write_file_atomic(with_suffix(stem, "_scree.tsv"),
                          io::format_matrix_tsv(mu_table, labels, {"mu", "one_minus_mu"}, "axis"));
    io::write_file_atomic(with_suffix(stem, "_manifest.txt"),
                          manifest_text({{"method", "layout"},
                                         {"input1", o.inputs[0]},
                                         {"axes", std::to_string(q)},
                                         {"nodes", std::to_string(g.nodes())},
                                         {"scaling", "sqrt(|1 - mu|)"}}));
    out << "wrote " << with_suffix(stem, "_{scree,rows,cols}.tsv").string() << " and "
        << with_suffix(stem, "_manifest.txt").string() << "\n";
    return kExitOk;
  }

  // k clamps to each component's size, so this yields every nontrivial μ
  const auto parts = spectrum_per_component(g, std::max<Index>(g.nodes() - 1, 1));
  for (std::size_t c = 0; c < parts.size(); ++c) {
    out << "component " << c + 1 << " (" << parts[c].nodes.size() << " nodes)\n";
    if (parts[c].spectrum.mu.size() > 0) print_mu_table(parts[c].spectrum.mu, out);
  }
  if (!o.axes) {
    out << "no --axes given: inspect the eigenvalues above, then rerun with --axes <q> to "
           "write coordinates\n";
    return kExitOk;
  }
  const Index q = *o.axes;
  Matrix coords = Matrix::Constant(g.nodes(), q + 1, std::nan(""));
  for (std::size_t ci = 0; ci < parts.size(); ++ci) {
    const auto& part = parts[ci];
    if (part.spectrum.mu.size() > 0) warn_mu_tie(part.spectrum.mu, q, err);
    const Matrix sc = part.spectrum.mu.size() > 0 ? scaled_coordinates(part.spectrum) : Matrix();
    const Index kept = std::min<Index>(q, sc.cols());
    for (std::size_t r = 0; r < part.nodes.size(); ++r) {
      coords(part.nodes[r], 0) = static_cast<double>(ci + 1);
      for (Index a = 0; a < kept; ++a) coords(part.nodes[r], a + 1) = sc(static_cast<Index>(r), a);
    }
  }
  auto labels = axis_labels(q);
  labels.insert(labels.begin(), "component");
  const fs::path stem = stem_of(o);
  io::write_file_atomic(with_suffix(stem, "_rows.tsv"), io::format_matrix_tsv(coords, g.labels(), labels));
  io::write_file_atomic(with_suffix(stem, "_manifest.txt"),
                        manifest_text({{"method", "layout"},
                                       {"input1", o.inputs[0]},
                                       {"axes", std::to_string(q)},
                                       {"per_component", "true"},
                                       {"components", std::to_string(parts.size())},
                                       {"scaling", "sqrt(|1 - mu|)"}}));
  out << "wrote " << with_suffix(stem, "_rows.tsv").string() << " and "
      << with_suffix(stem, "_manifest.txt").string() << "\n";
  return kExitOk;
}

int run_graph_regress(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.per_component)
    throw UsageError("--per-component is supported by layout only; split the graph first");
  const Graph g = io::read_edges(o.inputs[0], delimiter_of(o.delimiter));
  const auto ds = covariates_for(g, o);
  const GraphSpectrum full = spectrum(g, g.nodes() - 1);
  out << "graph spectrum (nontrivial)\n";
  print_mu_table(full.mu, out);
  out << "response: the first " << o.k << " graph eigenvectors\n";
  Report rep{"graph-regress", regress_on_covariates(g, ds.matrix, o.k), g.labels(), ds.col_labels,
             {{"k", std::to_string(o.k)}}};
  const auto& ex = std::get<GraphRegressionExtras>(rep.result.extras);
  out << "explained share of each response:";
  for (Index i = 0; i < ex.explained_share.size(); ++i) out << " " << fixed(ex.explained_share(i), 4);
  out << "\n";
  return emit(rep, o, out, err);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duality-diagram multivariate analysis: PCA, CA, LDA, PCAIV, CCA and graph methods",
               "duality"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
    int inputs;
    bool weights, standardize, per_component, k, axes;
  };
  const Spec specs[] = {
      {"pca", "Principal component analysis of <data>", 1, true, true, false, false, true},
      {"ca", "Correspondence analysis of the count table <table>", 1, false, false, false, false, true},
      {"lda", "Discriminant analysis of <data> by the groups in <groups>", 2, true, false, false, false, true},
      {"pcaiv", "PCA of <explanatory> with respect to the response <response>", 2, true, false, false, false, true},
      {"cca", "Canonical correlation analysis of <first> and <second>", 2, true, false, false, false, true},
      {"geary", "Geary ratios of the columns of <covariates> on the graph <edges>", 2, false, false, false, false, false},
      {"layout", "Spectral coordinates of the graph <edges>", 1, false, false, true, false, true},
      {"graph-regress", "Explain graph eigenvectors of <edges> by <covariates>", 2, false, false, true, true, true},
  };
  std::map<CLI::App*, std::string> names;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    names[sub] = s.name;
    sub->add_option("inputs", o.inputs, "input files")->required()->expected(s.inputs);
    if (s.axes) sub->add_option("--axes", o.axes, "number of axes to keep and write")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output path stem (default: first input without extension)");
    sub->add_option("--delimiter", o.delimiter, "field delimiter: ',' or tab (default: detect)");
    if (s.weights) sub->add_option("--weights", o.weights, "row weights file (label,weight)");
    if (s.standardize) sub->add_flag("--standardize", o.standardize, "scale variables to unit variance");
    if (s.per_component) sub->add_flag("--per-component", o.per_component, "analyse each connected component separately");
    if (s.k) sub->add_option("--k", o.k, "number of graph eigenvectors used as response")->check(CLI::PositiveNumber);
  }

  std::vector<const char*> argv{"duality"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string cmd = names.at(app.get_subcommands().front());
  try {
    if (cmd == "pca") return run_pca(o, out, err);
    if (cmd == "ca") return run_ca(o, out, err);
    if (cmd == "lda") return run_lda(o, out, err);
    if (cmd == "pcaiv") return run_pcaiv(o, out, err);
    if (cmd == "cca") return run_cca(o, out, err);
    if (cmd == "geary") return run_geary(o, out, err);
    if (cmd == "layout") return run_layout(o, out, err);
    return run_graph_regress(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace duality::cli
