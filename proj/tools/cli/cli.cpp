#include "cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "covertorus/error.hpp"
#include "covertorus/pqf.hpp"
#include "covertorus/specialization.hpp"
#include "covertorus/syntax.hpp"
#include "covertorus/verifier.hpp"

namespace covertorus::cli {

namespace {

// Parse failures exit with 2; they carry rendered diagnostics.
struct ParseFailure {
  std::string text;
};

using Object = std::variant<TorusPresentation, LinearSet, PointTuple, PQFSet>;

std::string slurp(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return slurp(in);
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  return slurp(f);
}

Document parse_or_fail(const std::string& text, const std::string& source,
                       const Document* context) {
  auto r = parse(text, context);
  if (r.ok()) return *r.document;
  std::string msg;
  for (const auto& d : r.diagnostics) msg += format_diagnostic(d, source) + "\n";
  throw ParseFailure{msg};
}

bool is_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool starts_with_keyword(const std::string& s) {
  for (const char* kw : {"torus ", "linear ", "point ", "tuple ", "cell ", "const "}) {
    if (s.rfind(kw, 0) == 0) return true;
  }
  return false;
}

// Holds the input document and resolves command arguments against it.
class Session {
 public:
  explicit Session(Document doc) : doc_(std::move(doc)) {}

  const Document& doc() const { return doc_; }

  /// A declared name, a full declaration, a parenthesised tuple or a point
  /// expression.
  Object resolve(const std::string& arg) {
    std::string name = arg;
    if (!is_name(arg) || !doc_.has(arg)) {
      std::string text;
      if (starts_with_keyword(arg)) {
        text = arg;
      } else if (!arg.empty() && arg[0] == '(') {
        text = "tuple _arg" + std::to_string(++inline_count_) + " = " + arg;
      } else {
        text = "point _arg" + std::to_string(++inline_count_) + " = " + arg;
      }
      doc_ = parse_or_fail(text, "<argument>", &doc_);
      name = decl_name(doc_.decls().back());
    }
    if (const auto* t = doc_.torus(name)) return t->torus;
    if (const auto* l = doc_.linear(name)) return l->set;
    if (auto s = doc_.set(name)) return *s;
    if (auto t = doc_.tuple(name)) return *t;
    throw Error(ErrorCode::kInvalidArgument, "'" + name + "' does not name an object");
  }

  TorusPresentation torus(const std::string& arg) {
    auto o = resolve(arg);
    if (auto* t = std::get_if<TorusPresentation>(&o)) return *t;
    throw Error(ErrorCode::kInvalidArgument, "'" + arg + "' is not a torus");
  }

  PointTuple tuple(const std::string& arg) {
    auto o = resolve(arg);
    if (auto* t = std::get_if<PointTuple>(&o)) return *t;
    throw Error(ErrorCode::kInvalidArgument, "'" + arg + "' is not a point tuple");
  }

  /// Output prefix: the constants of the input, so the output reparses.
  std::string header() const {
    std::string out;
    for (const auto& d : doc_.decls()) {
      if (const auto* c = std::get_if<ConstDecl>(&d)) out += "const " + c->name + "\n";
    }
    return out;
  }

  const BasisRegistry* names() const { return &doc_.registry(); }

 private:
  Document doc_;
  int inline_count_ = 0;
};

std::string line(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

std::string torus_blocks(const std::string& stem, const std::vector<TorusPresentation>& ts,
                         const BasisRegistry* names) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out += line(print_torus(stem + std::to_string(i + 1), ts[i], names));
  }
  return out;
}

// A branch as the torus {x : (U x)_i = c_i, i < k}, with U as a comment.
std::string branch_block(std::size_t index, const CanonicalBranch& b, const BasisRegistry* names) {
  const std::size_t n = b.u.rows();
  std::string out = "# branch " + std::to_string(index) + " U =";
  for (std::size_t i = 0; i < n; ++i) {
    out += i ? " ;" : "";
    for (std::size_t j = 0; j < n; ++j) out += " " + b.u(i, j).get_str();
  }
  out += "\n";
  TorusPresentation t(n);
  for (std::size_t i = 0; i < b.constants.size(); ++i) {
    auto row = b.u.row(i);
    t.add_row(std::vector<Integer>(row.begin(), row.end()), b.constants[i]);
  }
  return out + line(print_torus("B" + std::to_string(index), t, names));
}

struct Options {
  std::string file;
  std::vector<std::string> objects;
  long m = 2;
  long bound = 3;
  VerifierConfig verify;
  std::string fault;
  bool no_time = false;
  std::string report;
};

TorusPresentation faulty_intersect(const TorusPresentation& a, const TorusPresentation& b) {
  auto x = intersect(a, b);
  std::vector<Integer> z(x.arity(), 0);
  z[0] = 1;
  x.add_row(z, FieldPoint());
  return x;
}

CheckContext context_for(const Options& o) {
  CheckContext ctx{o.verify};
  if (o.fault == "intersect") ctx.intersect = faulty_intersect;
  return ctx;
}

std::size_t dimension_of(const Object& o, std::int64_t bound) {
  return std::visit(
      [&](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TorusPresentation>) {
          return dim_set(x);
        } else if constexpr (std::is_same_v<T, LinearSet>) {
          return dim_set(IrreducibleSet(x));
        } else if constexpr (std::is_same_v<T, PointTuple>) {
          return rank(x);
        } else {
          return dim_set(x, bound);
        }
      },
      o);
}

int dispatch(const std::string& cmd, const Options& o, std::istream& in, std::ostream& out) {
  if (cmd == "verify") {
    auto ctx = context_for(o);
    auto report = run_suite(ctx);
    out << format_report(report, !o.no_time);
    return report.passed() ? 0 : 1;
  }
  if (cmd == "replay") {
    auto ctx = context_for(o);
    auto outcomes = replay_report(read_source(o.report, in), ctx);
    bool still_failing = false;
    for (const auto& r : outcomes) {
      out << "replay check=" << r.check << " trial=" << r.trial
          << " reproduced=" << (r.reproduced ? "true" : "false") << " detail=" << r.detail << "\n";
      still_failing = still_failing || r.reproduced;
    }
    return still_failing ? 1 : 0;
  }

  const std::string source = o.file == "-" ? "<stdin>" : o.file;
  Session s(o.file.empty() ? Document() : parse_or_fail(read_source(o.file, in), source, nullptr));
  const auto& args = o.objects;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw Error(ErrorCode::kInvalidArgument,
                  cmd + " takes " + std::to_string(lo) +
                      (lo == hi ? "" : " to " + std::to_string(hi)) + " objects");
    }
  };
  std::string body;
  bool scalar = false;
  if (cmd == "canon") {
    need(1, 1);
    auto t = s.torus(args[0]);
    auto branches = canonical_form(t);
    for (std::size_t i = 0; i < branches.size(); ++i) body += branch_block(i + 1, branches[i], s.names());
  } else if (cmd == "components") {
    need(1, 1);
    body = torus_blocks("C", components(s.torus(args[0])), s.names());
  } else if (cmd == "roots") {
    need(1, 1);
    body = torus_blocks("R", mth_roots(s.torus(args[0]), Integer(o.m)), s.names());
  } else if (cmd == "power") {
    need(1, 1);
    body = line(print_torus("P", power(s.torus(args[0]), Integer(o.m)), s.names()));
  } else if (cmd == "intersect") {
    need(2, 2);
    auto a = s.torus(args[0]);
    auto b = s.torus(args[1]);
    body = line(print_torus("X", intersect(a, b), s.names()));
  } else if (cmd == "dim") {
    need(1, 1);
    scalar = true;
    body = "dim=" + std::to_string(dimension_of(s.resolve(args[0]), o.bound)) + "\n";
  } else if (cmd == "log-components") {
    need(1, 1);
    auto t = s.torus(args[0]);
    auto pieces = cell_components(Cell(1, LinearSet(t.arity()), t), o.bound);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      body += line(print_linear("L" + std::to_string(i + 1), pieces[i].linear(), s.names()));
    }
  } else if (cmd == "locus") {
    need(1, 1);
    body = line(print_linear("locus", locus(s.tuple(args[0])).linear(), s.names()));
  } else if (cmd == "rank") {
    scalar = true;
    // rank a [over b]
    if (args.size() == 3 && args[1] == "over") {
      auto a = s.tuple(args[0]);
      body = "rank=" + std::to_string(rank(a, s.tuple(args[2]))) + "\n";
    } else {
      need(1, 1);
      body = "rank=" + std::to_string(rank(s.tuple(args[0]))) + "\n";
    }
  } else if (cmd == "spec") {
    need(2, 2);
    auto a = s.tuple(args[0]);
    auto r = is_specialization(a, s.tuple(args[1]));
    scalar = true;
    body = std::string("specialization=") + (r.verdict ? "true" : "false");
    if (r.rank_drop) body += " rank_drop=" + std::to_string(*r.rank_drop);
    body += "\n";
  } else if (cmd == "diag-step") {
    need(2, 2);
    auto a = s.tuple(args[0]);
    auto a2 = s.tuple(args[1]);
    BasisRegistry reg = s.doc().registry();
    body = line(print_tuple("witness", diagonal_step(a, a2, reg), s.names()));
  } else if (cmd == "amalgamate") {
    need(6, 6);
    std::vector<PointTuple> t;
    for (const auto& arg : args) t.push_back(s.tuple(arg));
    BasisRegistry reg = s.doc().registry();
    body = line(print_tuple("b_star", amalgamate(t[0], t[1], t[2], t[3], t[4], t[5], reg), s.names()));
  }
  // Scalar answers are not declarations and need no constants.
  out << (scalar ? "" : s.header()) << body;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact computations with tori over a covering group, and the axiom verifier."};
  app.name("covertorus");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-f,--file", o.file, "Input declarations ('-' for stdin)");

  auto objects = [&](CLI::App* sub, const char* what) {
    sub->add_option("objects", o.objects, what)->required();
  };
  objects(app.add_subcommand("canon", "Canonical form branches of a torus"), "torus");
  objects(app.add_subcommand("components", "Irreducible components of a torus"), "torus");
  auto* roots = app.add_subcommand("roots", "m-th roots of an irreducible torus");
  roots->add_option("-m", o.m, "Root order")->required()->check(CLI::PositiveNumber);
  objects(roots, "torus");
  auto* pw = app.add_subcommand("power", "Image under x -> x^m");
  pw->add_option("-m", o.m, "Exponent")->required()->check(CLI::PositiveNumber);
  objects(pw, "torus");
  objects(app.add_subcommand("intersect", "Intersection of two tori"), "two tori");
  auto* dim = app.add_subcommand("dim", "Dimension of a torus, linear set, tuple locus or cell set");
  dim->add_option("-B,--bound", o.bound, "Kernel bound for cell sets")->check(CLI::NonNegativeNumber);
  objects(dim, "object");
  auto* logc = app.add_subcommand("log-components", "Components of log T within a kernel bound");
  logc->add_option("-B,--bound", o.bound, "Kernel bound")->required()->check(CLI::NonNegativeNumber);
  objects(logc, "torus");
  objects(app.add_subcommand("locus", "Smallest constant-defined set containing a tuple"), "tuple");
  objects(app.add_subcommand("rank", "Rank of a tuple, optionally 'over' another"), "tuple [over tuple]");
  objects(app.add_subcommand("spec", "Does the first tuple specialize to the second"), "two tuples");
  objects(app.add_subcommand("diag-step", "Diagonal step between two tuples"), "a a'");
  objects(app.add_subcommand("amalgamate", "Amalgamation witness b*"), "a a' b b' c c'");

  auto* verify = app.add_subcommand("verify", "Randomized property checks with replayable certificates");
  auto& vc = o.verify;
  verify->add_option("--seed", vc.seed, "Seed")->envname("COVERTORUS_SEED");
  verify->add_option("--trials", vc.trials, "Trials per check");
  verify->add_option("--jobs", vc.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--max-arity", vc.max_arity)->check(CLI::PositiveNumber);
  verify->add_option("--max-exponent", vc.max_exponent)->check(CLI::PositiveNumber);
  verify->add_option("--kernel-bound", vc.kernel_bound)->check(CLI::PositiveNumber);
  verify->add_option("--only", vc.only, "Run only these checks");
  verify->add_flag("--no-time", o.no_time, "Omit wall_ms fields");
  verify->add_option("--inject-fault", o.fault, "Replace an operation by a broken one")
      ->check(CLI::IsMember({"intersect"}));

  auto* replay = app.add_subcommand("replay", "Re-evaluate the certificates of a report");
  replay->add_option("report", o.report, "Report file ('-' for stdin)")->required();
  replay->add_option("--inject-fault", o.fault)->check(CLI::IsMember({"intersect"}));

  std::vector<std::string> argv_store{"covertorus"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, in, out);
  } catch (const ParseFailure& p) {
    err << p.text;
    return 2;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << error_code_name(ErrorCode::kInvalidArgument) << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace covertorus::cli
