#pragma once

// Command dispatch for the dcont tool.  Exit codes: 0 all checks passed,
// 1 a negative result on well-formed input, 2 input or usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcont.hpp"

namespace dcont::cli {

inline constexpr int kPass = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

namespace detail {

inline io::Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("parse-error", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return io::parse_document(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(e.code().size() + 2));
  }
}

inline std::string expected(const io::Document& doc, const std::string& want) {
  return std::string("expected ") + want + ", got kind " + io::kind_name(doc);
}

inline DirectedContainer want_dcont(const io::Document& doc) {
  if (auto* dc = std::get_if<DirectedContainer>(&doc)) return *dc;
  if (auto* om = std::get_if<io::OminusDoc>(&doc)) return om->dc;
  throw Error("usage", expected(doc, "dcont"));
}

inline SmallCat want_cat(const io::Document& doc) {
  if (auto* cat = std::get_if<SmallCat>(&doc)) return *cat;
  throw Error("usage", expected(doc, "cat"));
}

/// Containers stand for themselves; directed containers for their shapes
/// and positions.
inline Container want_container(const io::Document& doc) {
  if (auto* c = std::get_if<Container>(&doc)) return *c;
  return want_dcont(doc).base;
}

inline DirectedContainer lawful_dcont(const io::Document& doc) {
  auto dc = want_dcont(doc);
  if (auto v = validate_container(dc.base); !v.passed()) throw Error("ill-typed", v.violations.front().line());
  if (auto t = check_dcont_tables(dc); !t.passed()) throw Error("ill-typed", t.violations.front().line());
  if (auto r = check_dcont_laws(dc); !r.passed()) throw Error("not-lawful", r.violations.front().line());
  return dc;
}

inline SmallCat lawful_cat(const io::Document& doc) {
  auto cat = want_cat(doc);
  if (auto r = check_cat_laws(cat); !r.passed()) throw Error("not-lawful", r.violations.front().line());
  return cat;
}

/// Prints the report and a summary line; the exit code follows it.
inline int report(std::ostream& out, const LawReport& r, const std::string& what) {
  r.print(out);
  if (r.passed()) {
    out << what << ": ok\n";
    return kPass;
  }
  out << what << ": " << r.violations.size() << " violation(s)\n";
  return kNegative;
}

inline int check(const io::Document& doc, std::ostream& out) {
  if (auto* c = std::get_if<Container>(&doc)) return report(out, validate_container(*c), "container");
  if (auto* cat = std::get_if<SmallCat>(&doc)) return report(out, check_cat_laws(*cat), "cat");
  if (std::holds_alternative<io::MorphismDoc>(doc) || std::holds_alternative<io::PreOpDoc>(doc))
    throw Error("usage", "morphism files are checked with 'morphism check M SRC DST'");
  const auto dc = want_dcont(doc);
  LawReport r = validate_container(dc.base);
  if (r.passed()) r = check_dcont_tables(dc);
  if (r.passed()) r = check_dcont_laws(dc);
  if (auto* om = std::get_if<io::OminusDoc>(&doc); om && r.passed()) {
    r = check_bidirected(om->dc, om->ominus).report;
    return report(out, r, "ominus");
  }
  return report(out, r, "dcont");
}

inline void emit(std::ostream& out, const nlohmann::json& j) { out << io::emit(j); }

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite directed containers and small categories", "dcont"};
  app.require_subcommand(1);

  std::string file, file2, file3;
  std::size_t labels = 0;
  bool comonad = false;

  auto* check = app.add_subcommand("check", "structural and law report for a structure file");
  check->add_option("FILE", file)->required();

  auto* laws = app.add_subcommand("laws", "directed-container laws, or comonad laws with --comonad");
  laws->add_option("FILE", file)->required();
  laws->add_flag("--comonad", comonad, "sweep the comonad laws over every value");
  laws->add_option("--labels", labels, "label set size for --comonad");

  auto* to_cat = app.add_subcommand("to-cat", "directed container to small category");
  to_cat->add_option("FILE", file)->required();
  auto* from_cat = app.add_subcommand("from-cat", "small category to directed container");
  from_cat->add_option("FILE", file)->required();
  auto* op = app.add_subcommand("op", "opposite directed container or category");
  op->add_option("FILE", file)->required();

  auto* coproduct = app.add_subcommand("coproduct", "coproduct of two dconts or two cats");
  coproduct->add_option("F1", file)->required();
  coproduct->add_option("F2", file2)->required();
  auto* tensor = app.add_subcommand("tensor", "tensor of two dconts or two cats");
  tensor->add_option("F1", file)->required();
  tensor->add_option("F2", file2)->required();

  auto* groupoid = app.add_subcommand("groupoid", "inverse of every arrow, if there is one");
  groupoid->add_option("FILE", file)->required();

  bool groupoids_only = false, up_to_iso = false;
  double budget = static_cast<double>(kDefaultBudget);
  auto* enumerate = app.add_subcommand("enumerate", "every directed-container structure on a container");
  enumerate->add_option("FILE", file)->required();
  enumerate->add_flag("--groupoids-only", groupoids_only);
  enumerate->add_flag("--up-to-iso", up_to_iso, "print one representative per iso class");
  enumerate->add_option("--budget", budget, "largest candidate space to search");

  auto* morphism = app.add_subcommand("morphism", "morphism commands");
  morphism->require_subcommand(1);
  auto* morphism_check = morphism->add_subcommand("check", "check a morphism file against its endpoints");
  morphism_check->add_option("M", file)->required();
  morphism_check->add_option("SRC", file2)->required();
  morphism_check->add_option("DST", file3)->required();
  morphism_check->add_flag("--comonad", comonad, "also check the comonad-morphism laws");
  morphism_check->add_option("--labels", labels, "label set size for --comonad");

  auto* nat = app.add_subcommand("nat-trans", "natural transformation commands");
  nat->require_subcommand(1);
  auto* nat_count = nat->add_subcommand("count", "container morphisms vs naturality oracle");
  nat_count->add_option("C1", file)->required();
  nat_count->add_option("C2", file2)->required();

  std::string family, param;
  bool with_ominus = false;
  auto* example = app.add_subcommand("example", "emit a built-in family member");
  example->add_option("NAME", family)->required();
  example->add_option("--param", param)->required();
  example->add_flag("--ominus", with_ominus, "emit the family's inverse map with the structure");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  using namespace detail;
  try {
    if (*check) return detail::check(load(file), out);

    if (*laws) {
      if (!comonad) {
        const auto doc = load(file);
        return detail::check(doc, out);
      }
      const auto dc = want_dcont(load(file));
      if (!dcont_tables_well_typed(dc)) throw Error("ill-typed", "tables are not well-typed");
      const auto x = label_set(labels ? labels : default_label_count(dc.base));
      return report(out, check_comonad_laws(dc, x), "comonad");
    }

    if (*to_cat) return emit(out, io::to_json(dcont_to_cat(want_dcont(load(file))))), kPass;
    if (*from_cat) return emit(out, io::to_json(cat_to_dcont(lawful_cat(load(file))))), kPass;

    if (*op) {
      const auto doc = load(file);
      if (std::holds_alternative<SmallCat>(doc))
        return emit(out, io::to_json(opposite_cat(lawful_cat(doc)))), kPass;
      return emit(out, io::to_json(opposite_dcont(want_dcont(doc)))), kPass;
    }

    if (*coproduct || *tensor) {
      const auto a = load(file), b = load(file2);
      if (std::holds_alternative<SmallCat>(a)) {
        const auto ca = want_cat(a), cb = want_cat(b);
        return emit(out, io::to_json(*coproduct ? coproduct_cat(ca, cb) : tensor_cat(ca, cb))), kPass;
      }
      const auto da = want_dcont(a), db = want_dcont(b);
      return emit(out, io::to_json(*coproduct ? coproduct_dcont(da, db) : tensor_dcont(da, db))), kPass;
    }

    if (*groupoid) {
      const auto doc = load(file);
      const SmallCat cat =
          std::holds_alternative<SmallCat>(doc) ? lawful_cat(doc) : dcont_to_cat(lawful_dcont(doc));
      const auto inv = groupoid_inverse_search(cat);
      if (!inv) {
        out << "not a groupoid\n";
        return kNegative;
      }
      for (Index f = 0; f < cat.arrow_count(); ++f)
        out << "inverse " << cat.arrows[f] << " = " << cat.arrows[inv->inverse[f]] << '\n';
      return kPass;
    }

    if (*enumerate) {
      if (!(budget >= 0)) throw Error("usage", "--budget must be non-negative");
      const auto c = want_container(load(file));
      auto all = enum_structures(c, static_cast<std::size_t>(std::min(budget, 1.8e19)));
      if (groupoids_only) std::erase_if(all, [](const DirectedContainer& dc) { return !is_groupoid(dc); });
      const auto classes = iso_classes(all);
      for (const auto& dc : up_to_iso ? classes.representatives : all) out << io::to_json(dc).dump() << '\n';
      out << all.size() << " structures, " << classes.representatives.size() << " up to iso\n";
      return kPass;
    }

    if (*morphism_check) {
      const auto mdoc = load(file), sdoc = load(file2), ddoc = load(file3);
      const auto* md = std::get_if<io::MorphismDoc>(&mdoc);
      if (!md) throw Error("usage", expected(mdoc, "morphism"));
      const auto src = want_container(sdoc), dst = want_container(ddoc);
      const auto m = io::resolve_morphism(*md, src, dst);
      LawReport r = check_cont_morphism(m, src, dst);
      const bool directed = !std::holds_alternative<Container>(sdoc) && !std::holds_alternative<Container>(ddoc);
      if (r.passed() && directed) {
        const auto a = lawful_dcont(sdoc), b = lawful_dcont(ddoc);
        r = check_dcont_morphism(m, a, b);
        if (comonad) {
          const auto x = label_set(labels ? labels : default_label_count(a.base));
          r.append(check_comonad_morphism(m, a, b, x));
        }
      } else if (comonad && !directed) {
        throw Error("usage", "--comonad needs directed-container endpoints");
      }
      return report(out, r, "morphism");
    }

    if (*nat_count) {
      const auto c = want_container(load(file)), d = want_container(load(file2));
      for (const auto* x : {&c, &d})
        if (auto v = validate_container(*x); !v.passed()) throw Error("ill-typed", v.violations.front().line());
      const auto morphisms = enum_nat_trans(c, d).size();
      const auto oracle = count_natural_families(c, d);
      out << "morphisms: " << morphisms << '\n' << "oracle: " << oracle << '\n';
      return morphisms == oracle ? kPass : kNegative;
    }

    if (*example) {
      const auto ex = examples::make_example(family, param);
      if (!with_ominus) return emit(out, io::to_json(ex.dc)), kPass;
      if (!ex.ominus) throw Error("bad-params", family + " has no inverse map");
      return emit(out, io::to_json(ex.dc, *ex.ominus)), kPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  err << app.help();
  return kInputError;
}

}  // namespace dcont::cli
