// mhx: command-line front end. Exit codes: 0 ok, 1 parse, 2 shape/validity,
// 3 admissibility, 4 numerical.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mhx/io.hpp"

using namespace mhx;

namespace {

struct Options {
  std::string file;
  std::string backend;  // empty: take the document's
  double tol = 0;
  unsigned threads = 0;
  std::string out;
  int center = 0;
  double angle = 0;
  int decades = 8;
  bool verify = false;
};

std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class S>
std::string scalar_str(const S& x) {
  if constexpr (ScalarTraits<S>::exact) {
    return x.to_string();
  } else {
    if (x.imag() == 0) return num17(x.real());
    return num17(x.real()) + (x.imag() < 0 ? "" : "+") + num17(x.imag()) + "i";
  }
}

template <class S>
void print_matrix(std::ostream& os, const Matrix<S>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "  ") << scalar_str(m(i, j));
    os << "\n";
  }
}

template <class S>
void print_cumulative(std::ostream& os, const Filtration<S>& f) {
  auto sup = f.support();
  if (!sup) {
    os << "cumulative dims: (zero space)\n";
    return;
  }
  os << "cumulative dims:";
  for (int k = sup->first - 1; k <= sup->second; ++k) os << " " << k << ":" << f.at(k).dim();
  os << "\n";
}

void print_graded(std::ostream& os, const std::map<int, std::size_t>& dims) {
  os << "graded dims:";
  for (const auto& [w, d] : dims) os << " " << w << ":" << d;
  os << "\n";
}

void print_hodge(std::ostream& os, const std::map<Bidegree, std::size_t>& h) {
  os << "hodge numbers:";
  for (const auto& [ab, d] : h) os << " (" << ab.first << "," << ab.second << "):" << d;
  os << "\n";
}

template <class S>
int cmd_validate(const Document& doc) {
  auto m = document_mhs<S>(doc);
  std::cout << "valid mixed Hodge structure of dimension " << m.dim() << "\n";
  print_graded(std::cout, m.graded_dims());
  print_hodge(std::cout, m.hodge_numbers());
  return 0;
}

template <class S>
int cmd_split(const Document& doc) {
  auto m = document_mhs<S>(doc);
  std::cout << "I^{a,b} dims:";
  for (const auto& [ab, d] : m.hodge_numbers()) std::cout << " (" << ab.first << "," << ab.second << "):" << d;
  std::cout << "\nsplit over R: " << (is_split(m) ? "yes" : "no") << "\n";
  return 0;
}

template <class S>
int cmd_delta(const Document& doc) {
  auto d = delta(document_mhs<S>(doc));
  std::cout << "delta:\n";
  print_matrix(std::cout, d.delta);
  std::cout << "residual: " << num17(delta_residual(d)) << "\n";
  return 0;
}

template <class S>
int cmd_height(const Document& doc) {
  auto m = document_mhs<S>(doc);
  auto [one, one_dual] = document_generators<S>(doc);
  auto b = as_biextension(m, one, one_dual);
  std::cout << "height: " << num17(height(b)) << "\n";
  return 0;
}

template <class S>
int cmd_wfilt(const Document& doc, int center) {
  auto r = weight_filtration(NilpotentOperator<S>::make(document_N<S>(doc)), center);
  std::cout << "W(N) centred at " << center << "\n";
  print_cumulative(std::cout, r.W);
  return 0;
}

template <class S>
int cmd_relwfilt(const Document& doc) {
  auto r = relative_weight_filtration(NilpotentOperator<S>::make(document_N<S>(doc)), document_W<S>(doc));
  std::cout << "relative weight filtration M(N, W)\n";
  print_cumulative(std::cout, r.M);
  std::cout << (r.M == document_W<S>(doc) ? "M = W\n" : "M differs from W\n");
  return 0;
}

void write_sidecar(std::ostream& os, const HeightScan& s) {
  // 17 significant digits, as in the CSV; NaN (no successful sample) is null
  auto field = [](double x) { return std::isfinite(x) ? num17(x) : std::string("null"); };
  os << "{\n  \"mu\": " << field(s.mu) << ",\n  \"H_limit\": " << field(s.H_limit)
     << ",\n  \"converged_gap\": " << field(s.converged_gap()) << "\n}\n";
}

template <class S>
int cmd_orbit_scan(const Document& doc, const Options& opt) {
  auto [one, one_dual] = document_generators<S>(doc);
  auto o = make_orbit(document_N<S>(doc), document_F<S>(doc), document_W<S>(doc), one, one_dual);
  auto scan = height_scan(o, opt.angle, decade_moduli(opt.decades), opt.threads);
  std::ostringstream csv;
  csv << "t_abs,t_arg,h,h_tilde\n";
  for (const auto& r : scan.records) {
    csv << num17(r.t_abs) << "," << num17(r.t_arg) << "," << num17(r.h) << "," << num17(r.h_tilde) << "\n";
    if (r.error) {
      std::cerr << "sample |t| = " << num17(r.t_abs) << " failed: " << *r.error << "\n";
    }
  }
  if (opt.out.empty()) {
    std::cout << csv.str();
    write_sidecar(std::cerr, scan);
  } else {
    std::ofstream f(opt.out), side(opt.out + ".json");
    if (!f || !side) throw ParseError("cannot write " + opt.out);
    f << csv.str();
    write_sidecar(side, scan);
  }
  return 0;
}

template <class S>
int cmd_genus3(const Document& doc, const Options& opt) {
  auto r = verify_main_theorem<S>(document_model(doc));
  std::cout << r.describe();
  if (!opt.verify) return 0;
  const bool ok = r.gap < tolerance();
  std::cout << "gap " << (ok ? "<" : ">=") << " tolerance " << num17(tolerance()) << ": " << (ok ? "PASS" : "FAIL")
            << "\n";
  return ok ? 0 : 4;
}

template <class F>
int on_backend(const std::string& backend, F&& f) {
  if (backend == "exact") return f(GaussianRational{});
  if (backend == "float") return f(Complex{});
  throw ParseError("backend must be \"exact\" or \"float\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Hodge structures, biextension heights and nilpotent orbits"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  app.add_option("--backend", opt.backend, "exact or float (default: the document's)")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", opt.tol, "float rank tolerance (default: $MHX_TOL or 1e-9)");
  app.add_option("--threads", opt.threads, "scan worker cap (0 = all cores)");
  app.add_option("--out", opt.out, "output file (scan CSV; sidecar at <out>.json)");

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", opt.file, "document")->required();
    return c;
  };
  auto* validate_cmd = file_cmd("validate", "check a document is a mixed Hodge structure");
  auto* split_cmd = file_cmd("split", "Deligne bigrading dimensions and R-splitness");
  auto* delta_cmd = file_cmd("delta", "the splitting operator delta");
  auto* height_cmd = file_cmd("height", "biextension height (needs generators)");
  auto* wfilt_cmd = file_cmd("wfilt", "weight filtration of N");
  wfilt_cmd->add_option("--center", opt.center, "centre k")->required();
  auto* relw_cmd = file_cmd("relwfilt", "relative weight filtration M(N, W)");
  auto* orbit_cmd = app.add_subcommand("orbit", "nilpotent orbits");
  orbit_cmd->require_subcommand(1);
  auto* scan_cmd = orbit_cmd->add_subcommand("scan", "height scan along a ray");
  scan_cmd->add_option("file", opt.file, "orbit document")->required();
  scan_cmd->add_option("--angle", opt.angle, "arg t of the ray");
  scan_cmd->add_option("--decades", opt.decades, "moduli 10^-1 .. 10^-d")->check(CLI::Range(1, 300));
  auto* genus3_cmd = file_cmd("genus3", "genus-3 model report");
  genus3_cmd->add_flag("--verify", opt.verify, "exit 0 iff |H - Ht(B)| < tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (opt.tol > 0) {
      set_tolerance(opt.tol);
    } else if (const char* env = std::getenv("MHX_TOL")) {
      try {
        set_tolerance(std::stod(env));
      } catch (const std::exception&) {
        throw ParseError(std::string("MHX_TOL is not a positive number: ") + env);
      }
    }
    const Document doc = read_document(opt.file);
    const std::string backend = opt.backend.empty() ? doc.backend : opt.backend;
    return on_backend(backend, [&](auto tag) -> int {
      using S = decltype(tag);
      if (*validate_cmd) return cmd_validate<S>(doc);
      if (*split_cmd) return cmd_split<S>(doc);
      if (*delta_cmd) return cmd_delta<S>(doc);
      if (*height_cmd) return cmd_height<S>(doc);
      if (*wfilt_cmd) return cmd_wfilt<S>(doc, opt.center);
      if (*relw_cmd) return cmd_relwfilt<S>(doc);
      if (*scan_cmd) return cmd_orbit_scan<S>(doc, opt);
      if (*genus3_cmd) return cmd_genus3<S>(doc, opt);
      return 1;
    });
  } catch (const NotAnMHS& e) {
    std::cerr << "not a mixed Hodge structure: failing (a,b) = (" << e.a() << "," << e.b() << "): " << e.what()
              << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
}
