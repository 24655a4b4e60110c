#include "deco/oracle/checks.hpp"

#include <algorithm>
#include <set>

#include "deco/algebra.hpp"
#include "deco/cache.hpp"
#include "deco/denote.hpp"
#include "deco/incrementalize.hpp"
#include "deco/typecheck.hpp"

namespace deco {

Json CheckRecord::to_json() const {
  return Json{{"name", name},
              {"seed", seed},
              {"samples", samples},
              {"pass", pass},
              {"witness", witness}};
}

Json sample_json(const Type& in, const LawSample& s) {
  Json ds = Json::array();
  for (const auto& d : s.ds) ds.push_back(change_to_json(in, d));
  return Json{{"x", value_to_json(in, s.x)}, {"changes", ds}};
}

std::vector<LawSample> gen_law_samples(Generator& g, const Type& in,
                                       std::size_t n, std::size_t depth) {
  std::vector<LawSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    LawSample s;
    s.x = g.gen_value(in);
    s.ds = g.gen_changes(in, s.x, depth);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

Json fail_witness(const std::string& law, std::size_t step, const Type& in,
                  const LawSample& s) {
  Json w = sample_json(in, s);
  w["law"] = law;
  w["step"] = step;
  return w;
}

}  // namespace

CheckRecord check_laws(const std::string& name, const Machine& m,
                       const ValueFn& f, const std::vector<LawSample>& samples,
                       const Tolerance& tol, std::uint64_t seed,
                       std::optional<Tolerance> cache_tol) {
  CheckRecord rec{name, seed, samples.size(), true, nullptr};
  const Tolerance ctol = cache_tol.value_or(tol);
  const Type& in = m.input_type();
  const Type& out = m.output_type();
  for (const auto& s : samples) {
    std::size_t step = 0;
    try {
      auto [y, c] = m.initialize(s.x);
      Value fy = f(s.x);
      if (!values_equal(out, y, fy, tol)) {
        rec.pass = false;
        rec.witness = fail_witness("1", 0, in, s);
        rec.witness["expected"] = value_to_json(out, fy);
        rec.witness["actual"] = value_to_json(out, y);
        return rec;
      }
      Value cur = s.x;
      for (const auto& d : s.ds) {
        ++step;
        Change dy = m.step(d, c);
        cur = apply_change(in, cur, d);
        Value expected = f(cur);
        y = apply_change(out, y, dy);
        if (!values_equal(out, y, expected, tol)) {
          rec.pass = false;
          rec.witness = fail_witness("2", step, in, s);
          rec.witness["expected"] = value_to_json(out, expected);
          rec.witness["actual"] = value_to_json(out, y);
          rec.witness["output_change"] = change_to_json(out, dy);
          return rec;
        }
        auto fresh = m.initialize(cur);
        if (!m.cache_equal(c, fresh.second, ctol)) {
          rec.pass = false;
          rec.witness = fail_witness("3", step, in, s);
          rec.witness["expected_cache"] = cache_to_json(fresh.second);
          rec.witness["actual_cache"] = cache_to_json(c);
          return rec;
        }
      }
    } catch (const std::exception& e) {
      rec.pass = false;
      rec.witness = fail_witness("exception", step, in, s);
      rec.witness["message"] = e.what();
      return rec;
    }
  }
  return rec;
}

CheckRecord check_value_preservation(const std::string& name, const Term& t,
                                     const std::vector<LawSample>& samples,
                                     const Tolerance& tol,
                                     std::uint64_t seed) {
  CheckRecord rec{name, seed, samples.size(), true, nullptr};
  const Type& in = t.input();
  const Type& out = t.output();
  MachinePtr m;
  try {
    m = incrementalize(t);
  } catch (const std::exception& e) {
    rec.pass = false;
    rec.witness = Json{{"term", t.to_string()}, {"message", e.what()}};
    return rec;
  }
  for (const auto& s : samples) {
    std::vector<Change> rev(s.ds.rbegin(), s.ds.rend());
    try {
      Value got = iter(*m, s.x, rev).first;
      Value want = denote(t, sum_changes(in, s.x, rev));
      if (!values_equal(out, got, want, tol)) {
        rec.pass = false;
        rec.witness = sample_json(in, s);
        rec.witness["term"] = t.to_string();
        rec.witness["expected"] = value_to_json(out, want);
        rec.witness["actual"] = value_to_json(out, got);
        return rec;
      }
    } catch (const std::exception& e) {
      rec.pass = false;
      rec.witness = sample_json(in, s);
      rec.witness["term"] = t.to_string();
      rec.witness["message"] = e.what();
      return rec;
    }
  }
  return rec;
}

CheckRecord check_random_value_preservation(const std::string& name,
                                            Generator& g, std::size_t terms,
                                            std::size_t per_term) {
  const GenConfig& cfg = g.config();
  CheckRecord rec{name, cfg.seed, 0, true, nullptr};
  std::size_t made = 0;
  std::size_t attempts = 0;
  while (made < terms) {
    if (++attempts > terms * 50) {
      throw GenerationError("could not generate " + std::to_string(terms) +
                            " evaluable terms");
    }
    Type in = g.gen_type();
    std::size_t size = 1 + g.below(cfg.max_term_size);
    Term t;
    try {
      t = g.gen_term(in, size);
    } catch (const GenerationError&) {
      continue;
    }
    std::vector<LawSample> samples;
    for (std::size_t k = 0; k < per_term; ++k) {
      LawSample s;
      s.x = g.gen_value(in);
      s.ds = g.gen_changes(in, s.x, g.below(cfg.max_changes + 1));
      samples.push_back(std::move(s));
    }
    try {
      for (const auto& s : samples) {
        denote(t, sum_changes(in, s.x, {s.ds.rbegin(), s.ds.rend()}));
      }
    } catch (const FiniteSupportError&) {
      continue;
    }
    CheckRecord one = check_value_preservation(
        name, t, samples, cfg.tolerance_for(t.output()), cfg.seed);
    ++made;
    rec.samples += samples.size();
    if (!one.pass) {
      rec.pass = false;
      rec.witness = one.witness;
      return rec;
    }
  }
  return rec;
}

namespace {

const char* variant_name(Change::Kind k) {
  switch (k) {
    case Change::Kind::Cl: return "cl";
    case Change::Kind::Cr: return "cr";
    case Change::Kind::Sl: return "sl";
    case Change::Kind::Sr: return "sr";
    case Change::Kind::Null: return "null";
    default: return nullptr;
  }
}

void tally(const Change& d, VariantCounts& out) {
  if (const char* v = variant_name(d.kind())) ++out[v];
  switch (d.kind()) {
    case Change::Kind::Map:
      for (const auto& [i, c] : d.as_map()) tally(c, out);
      break;
    case Change::Kind::Pair:
      tally(d.first(), out);
      tally(d.second(), out);
      break;
    case Change::Kind::Cl:
    case Change::Kind::Cr:
      tally(d.local(), out);
      break;
    default:
      break;
  }
}

}  // namespace

CheckRecord check_completeness(const std::string& name, Generator& g,
                               std::size_t samples, VariantCounts* variants) {
  CheckRecord rec{name, g.config().seed, samples, true, nullptr};
  for (std::size_t k = 0; k < samples; ++k) {
    Type ty = g.gen_type();
    Value x = g.gen_value(ty);
    Value y = ty.mentions("nat") ? apply_change(ty, x, g.gen_change(ty, x))
                                 : g.gen_value(ty);
    Change d = diff_values(ty, y, x);
    if (variants) tally(d, *variants);
    Value z = apply_change(ty, x, d);
    if (!values_equal(ty, z, y, g.config().tolerance_for(ty))) {
      rec.pass = false;
      rec.witness = Json{{"type", ty.to_string()},
                         {"x", value_to_json(ty, x)},
                         {"y", value_to_json(ty, y)},
                         {"diff", change_to_json(ty, d)},
                         {"x_plus_diff", value_to_json(ty, z)}};
      return rec;
    }
  }
  return rec;
}

CheckRecord check_self_maintainability(const std::string& name, Generator& g,
                                       std::size_t terms,
                                       std::size_t per_term) {
  CheckRecord rec{name, g.config().seed, 0, true, nullptr};
  const GenConfig& cfg = g.config();
  std::size_t attempts = 0;
  while (rec.samples < terms) {
    if (++attempts > terms * 50) {
      throw GenerationError(name + ": too few evaluable terms");
    }
    Type in = g.gen_type();
    Term t = g.gen_self_maintainable(in, 1 + g.below(cfg.max_term_size));
    MachinePtr m = incrementalize(t);
    try {
      for (std::size_t s = 0; s < per_term; ++s) {
        Value x = g.gen_value(in);
        auto ds = g.gen_changes(in, x, g.below(cfg.max_changes + 1));
        auto [y, c] = m->initialize(x);
        std::size_t step = 0;
        while (true) {
          if (cache_payload_count(c) != 0) {
            rec.pass = false;
            rec.witness = Json{{"term", t.to_string()},
                               {"type", in.to_string()},
                               {"step", step},
                               {"cache", cache_to_json(c)}};
            ++rec.samples;
            return rec;
          }
          if (step == ds.size()) break;
          m->step(ds[step++], c);
        }
      }
    } catch (const FiniteSupportError&) {
      continue;
    }
    ++rec.samples;
  }
  return rec;
}

namespace {

using IndexSet = std::set<Index>;

IndexSet keys(const Value& v) {
  IndexSet s;
  for (const auto& [i, x] : v.as_map()) s.insert(i);
  return s;
}

IndexSet all_positions(const Shape& s) {
  return IndexSet(s.positions().begin(), s.positions().end());
}

/// Support bound of `last` applied to `arg`; throws FiniteSupportError when
/// the bound is infinite.
IndexSet predicted(const Term& last, const Value& arg) {
  const Type& in = last.input();
  const Type& out = last.output();
  using K = Term::Kind;
  switch (last.kind()) {
    case K::Set: {
      IndexSet s = keys(arg.second());
      s.insert(last.index());
      return s;
    }
    case K::Replicate:
      if (is_default(in, arg)) return {};
      if (!out.shape().finite()) {
        throw InputPreconditionError("replicate of a non-default value over " +
                                 out.shape().to_string());
      }
      return all_positions(out.shape());
    case K::Map:
      if (is_default(out.elem(), denote(last.kid(0), epsilon(in.elem())))) {
        return keys(arg);
      }
      return all_positions(out.shape());
    case K::Reshape: {
      const IndexFnDef& fn = *last.index_fn();
      IndexSet src = keys(arg);
      IndexSet s;
      if (out.shape().finite()) {
        for (const auto& j : out.shape().positions()) {
          if (src.count(fn.map(in.shape(), out.shape(), j))) s.insert(j);
        }
        return s;
      }
      for (const auto& i : src) {
        auto pre = fn.preimage ? fn.preimage(in.shape(), out.shape(), i)
                               : std::nullopt;
        if (!pre) {
          throw FiniteSupportError("reshape " + fn.name +
                                   " has an infinite fiber over " +
                                   i.to_string());
        }
        s.insert(pre->begin(), pre->end());
      }
      return s;
    }
    case K::Filter:
      if (is_default(in.left(), arg.first())) return keys(arg.second());
      if (!out.shape().finite()) {
        throw InputPreconditionError("filter with a non-default fallback over " +
                                 out.shape().to_string());
      }
      return all_positions(out.shape());
    case K::Zip: {
      IndexSet s = keys(arg.first());
      IndexSet b = keys(arg.second());
      s.insert(b.begin(), b.end());
      return s;
    }
    case K::Tp: {
      IndexSet s;
      for (const auto& [i, inner] : arg.as_map()) {
        IndexSet b = keys(inner);
        s.insert(b.begin(), b.end());
      }
      return s;
    }
    case K::Op:
      if (in.is_product() && in.left().is_container() &&
          in.right().is_container() && out.is_container() &&
          out.shape().arg().kind() == ShapeArg::Kind::Pair) {
        IndexSet s;
        for (const auto& i : keys(arg.first())) {
          for (const auto& j : keys(arg.second())) s.insert(Index::pair(i, j));
        }
        return s;
      }
      break;
    default:
      break;
  }
  throw UsageError(std::string("no support bound for ") +
                   kind_name(last.kind()));
}

/// Inner bound of tp: entry j of the output is supported within
/// {i | j ∈ supp(arg i)}.
bool tp_inner_ok(const Value& arg, const Value& y) {
  for (const auto& [j, col] : y.as_map()) {
    for (const auto& [i, v] : col.as_map()) {
      const Value* row = arg.find(i);
      if (!row || !row->find(j)) return false;
    }
  }
  return true;
}

Json index_list(const IndexSet& s) {
  Json a = Json::array();
  for (const auto& i : s) a.push_back(index_to_json(i));
  return a;
}

}  // namespace

CheckRecord check_finite_support(const std::string& name, const Registry& reg,
                                 const Term& t, const Type& in, Generator& g,
                                 std::size_t samples) {
  CheckRecord rec{name, g.config().seed, samples, true, nullptr};
  Term c;
  try {
    c = typecheck(reg, t, in);
  } catch (const FiniteSupportError& e) {
    rec.pass = false;
    rec.witness = Json{{"violation", e.what()}, {"term", t.to_string()}};
    return rec;
  }
  if (!c.output().is_container()) {
    throw UsageError("finite-support check needs a container-typed output");
  }
  rec.samples = 0;
  for (std::size_t k = 0; k < samples * 20 && rec.samples < samples; ++k) {
    Value x = g.gen_value(in);
    try {
      Term last = c;
      Value arg = x;
      while (last.kind() == Term::Kind::Seq) {
        arg = denote(last.kid(0), arg);
        last = last.kid(1);
      }
      Value y = denote(last, arg);
      IndexSet bound = predicted(last, arg);
      IndexSet got = keys(y);
      bool ok = std::includes(bound.begin(), bound.end(), got.begin(),
                              got.end()) &&
                conforms(c.output(), y);
      if (ok && last.kind() == Term::Kind::Tp) ok = tp_inner_ok(arg, y);
      if (!ok) {
        rec.pass = false;
        rec.witness = Json{{"term", c.to_string()},
                           {"x", value_to_json(in, x)},
                           {"support", index_list(got)},
                           {"bound", index_list(bound)}};
        ++rec.samples;
        return rec;
      }
      ++rec.samples;
    } catch (const InputPreconditionError&) {
    } catch (const FiniteSupportError& e) {
      rec.pass = false;
      rec.witness = Json{{"violation", e.what()},
                         {"term", c.to_string()},
                         {"x", value_to_json(in, x)}};
      ++rec.samples;
      return rec;
    }
  }
  return rec;
}

}  // namespace deco
