#include "delas/search.hpp"

#include <algorithm>
#include <sstream>

#include "delas/binding.hpp"
#include "delas/printer.hpp"
#include "delas/semantics.hpp"
#include "delas/sugar.hpp"

namespace delas {

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// All partitions of {0..n-1} as block-index vectors (restricted growth
// strings), in lexicographic order.
std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= max_used + 1 && b <= i; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

std::set<std::pair<std::string, std::string>> partition_relation(
    const std::vector<std::string>& worlds, const std::vector<std::size_t>& rgs) {
  std::set<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < worlds.size(); ++i)
    for (std::size_t j = 0; j < worlds.size(); ++j)
      if (rgs[i] == rgs[j]) rel.insert({worlds[i], worlds[j]});
  return rel;
}

// All D^arity object tuples in lexicographic order.
std::vector<std::vector<std::string>> all_tuples(
    const std::vector<std::string>& domain, std::size_t arity) {
  std::vector<std::vector<std::string>> out{{}};
  for (std::size_t k = 0; k < arity; ++k) {
    std::vector<std::vector<std::string>> next;
    for (const auto& t : out)
      for (const auto& o : domain) {
        auto copy = t;
        copy.push_back(o);
        next.push_back(std::move(copy));
      }
    out = std::move(next);
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw SearchError("count_models: enumeration size overflows");
  return a * b;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

void check_caps(const Bounds& b, const EnumSignature& sig) {
  if (sig.agents.size() > b.agents || sig.names.size() > b.names ||
      sig.variables.size() > b.variables)
    throw SearchError("signature exceeds the bounds' symbol caps");
  if (b.max_worlds == 0 || b.max_domain == 0)
    throw SearchError("bounds must be positive");
}

// One structural choice with `radix` alternatives.
struct Choice {
  std::uint64_t radix;
  std::function<void(KripkeModel&, std::uint64_t)> apply;
};

std::vector<Choice> model_choices(const Bounds& b, const EnumSignature& sig,
                                  const std::vector<std::string>& worlds,
                                  const std::vector<std::string>& domain) {
  const std::size_t W = worlds.size(), D = domain.size();
  std::vector<Choice> choices;

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& w : worlds)
    for (const auto& v : worlds) edges.emplace_back(w, v);

  if (b.model_class == ModelClass::Arbitrary) {
    if (W * W > 20) throw SearchError("too many worlds to enumerate relations");
    for (const auto& agent : sig.agents)
      choices.push_back({std::uint64_t(1) << (W * W),
                         [agent, edges](KripkeModel& m, std::uint64_t digit) {
                           auto& r = m.relations[agent];
                           for (std::size_t i = 0; i < edges.size(); ++i)
                             if ((digit >> i) & 1u) r.insert(edges[i]);
                         }});
  } else {
    auto parts = partitions(W);
    for (const auto& agent : sig.agents)
      choices.push_back(
          {parts.size(), [agent, parts, worlds](KripkeModel& m, std::uint64_t digit) {
             m.relations[agent] = partition_relation(worlds, parts[digit]);
           }});
  }

  for (const auto& [pred, arity] : sig.predicates) {
    auto tuples = all_tuples(domain, arity);
    if (tuples.size() > 20)
      throw SearchError("predicate '" + pred + "' has too many tuples to enumerate");
    for (const auto& w : worlds)
      choices.push_back({std::uint64_t(1) << tuples.size(),
                         [pred, w, tuples](KripkeModel& m, std::uint64_t digit) {
                           auto& cell = m.rho[pred][w];
                           for (std::size_t i = 0; i < tuples.size(); ++i)
                             if ((digit >> i) & 1u) cell.insert(tuples[i]);
                         }});
  }

  for (const auto& name : sig.names)
    for (const auto& w : worlds)
      choices.push_back({D, [name, w, domain](KripkeModel& m, std::uint64_t digit) {
                           m.eta[name][w] = domain[digit];
                         }});
  return choices;
}

KripkeModel base_model(const EnumSignature& sig,
                       const std::vector<std::string>& worlds,
                       const std::vector<std::string>& domain) {
  KripkeModel m;
  m.worlds = worlds;
  m.domain = domain;
  m.agents = sig.agents;
  m.signature = sig.predicates;
  for (const auto& agent : sig.agents) m.relations[agent];
  return m;
}

// Yields every (world, assignment) point of the model; false stops.
bool yield_points(const std::shared_ptr<const KripkeModel>& m,
                  const EnumSignature& sig, std::uint64_t& yielded,
                  const std::function<bool(const PointedModel&)>& yield) {
  const std::size_t D = m->domain.size(), V = sig.variables.size();
  for (const auto& w : m->worlds) {
    std::vector<std::size_t> digits(V, 0);
    while (true) {
      Assignment sigma;
      for (std::size_t i = 0; i < V; ++i) sigma[sig.variables[i]] = m->domain[digits[i]];
      ++yielded;
      if (!yield({m, w, std::move(sigma)})) return false;
      std::size_t i = 0;
      for (; i < V; ++i) {
        if (++digits[i] < D) break;
        digits[i] = 0;
      }
      if (i == V) break;
    }
  }
  return true;
}

std::string describe(const PointedModel& pm) {
  const KripkeModel& m = *pm.model;
  std::ostringstream out;
  out << "worlds {";
  for (const auto& w : m.worlds) out << " " << w;
  out << " } domain {";
  for (const auto& o : m.domain) out << " " << o;
  out << " }";
  for (const auto& [agent, rel] : m.relations) {
    out << " R_" << agent << " {";
    for (const auto& [a, b] : rel) out << " (" << a << "," << b << ")";
    out << " }";
  }
  for (const auto& [pred, per_world] : m.rho)
    for (const auto& [w, tuples] : per_world) {
      out << " " << pred << "@" << w << " {";
      for (const auto& t : tuples) {
        out << " (";
        for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
        out << ")";
      }
      out << " }";
    }
  for (const auto& [name, per_world] : m.eta)
    for (const auto& [w, o] : per_world) out << " " << name << "@" << w << "=" << o;
  out << " point " << pm.world;
  for (const auto& [x, o] : pm.assignment) out << " " << x << "=" << o;
  return out.str();
}

}  // namespace

EnumSignature signature_of(const Formula& f) {
  EnumSignature sig;
  auto agents = agents_of(f);
  sig.agents.assign(agents.begin(), agents.end());
  auto names = names_of(f);
  sig.names.assign(names.begin(), names.end());
  auto vars = free_vars(f);
  sig.variables.assign(vars.begin(), vars.end());
  sig.predicates = predicates_of(f);
  return sig;
}

std::uint64_t enumerate_models(
    const Bounds& b, const EnumSignature& sig,
    const std::function<bool(const PointedModel&)>& yield) {
  check_caps(b, sig);
  std::uint64_t yielded = 0;
  for (std::size_t W = 1; W <= b.max_worlds; ++W)
    for (std::size_t D = 1; D <= b.max_domain; ++D) {
      auto worlds = numbered("w", W);
      auto domain = numbered("o", D);
      auto choices = model_choices(b, sig, worlds, domain);
      const KripkeModel base = base_model(sig, worlds, domain);

      std::vector<std::uint64_t> digits(choices.size(), 0);
      while (true) {
        KripkeModel m = base;
        for (std::size_t i = 0; i < choices.size(); ++i)
          choices[i].apply(m, digits[i]);
        auto sp = std::make_shared<const KripkeModel>(std::move(m));
        if (!yield_points(sp, sig, yielded, yield)) return yielded;
        std::size_t i = 0;
        for (; i < choices.size(); ++i) {
          if (++digits[i] < choices[i].radix) break;
          digits[i] = 0;
        }
        if (i == choices.size()) break;
      }
    }
  return yielded;
}

std::uint64_t count_models(const Bounds& b, const EnumSignature& sig) {
  check_caps(b, sig);
  std::uint64_t total = 0;
  for (std::size_t W = 1; W <= b.max_worlds; ++W)
    for (std::size_t D = 1; D <= b.max_domain; ++D) {
      std::uint64_t relations =
          b.model_class == ModelClass::Arbitrary
              ? pow_u64(pow_u64(2, W * W), sig.agents.size())
              : pow_u64(partitions(W).size(), sig.agents.size());
      std::uint64_t rho = 1;
      for (const auto& [pred, arity] : sig.predicates)
        rho = checked_mul(rho, pow_u64(pow_u64(2, pow_u64(D, arity)), W));
      std::uint64_t eta = pow_u64(D, sig.names.size() * W);
      std::uint64_t points =
          checked_mul(W, pow_u64(D, sig.variables.size()));
      total += checked_mul(checked_mul(checked_mul(relations, rho), eta), points);
    }
  return total;
}

std::uint64_t sample_models(const Bounds& b, const EnumSignature& sig,
                            std::uint64_t count, std::mt19937_64& rng,
                            const std::function<bool(const PointedModel&)>& yield) {
  check_caps(b, sig);
  auto worlds = numbered("w", b.max_worlds);
  auto domain = numbered("o", b.max_domain);
  auto parts = partitions(b.max_worlds);
  std::uint64_t yielded = 0;
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  auto coin = [&] { return pick(2) == 1; };
  for (std::uint64_t k = 0; k < count; ++k) {
    KripkeModel m = base_model(sig, worlds, domain);
    for (const auto& agent : sig.agents) {
      if (b.model_class == ModelClass::Arbitrary) {
        auto& r = m.relations[agent];
        for (const auto& w : worlds)
          for (const auto& v : worlds)
            if (coin()) r.insert({w, v});
      } else {
        m.relations[agent] = partition_relation(worlds, parts[pick(parts.size())]);
      }
    }
    for (const auto& [pred, arity] : sig.predicates)
      for (const auto& w : worlds) {
        auto& cell = m.rho[pred][w];
        for (const auto& t : all_tuples(domain, arity))
          if (coin()) cell.insert(t);
      }
    for (const auto& name : sig.names)
      for (const auto& w : worlds) m.eta[name][w] = domain[pick(domain.size())];
    std::string point = worlds[pick(worlds.size())];
    Assignment sigma;
    for (const auto& x : sig.variables) sigma[x] = domain[pick(domain.size())];
    auto sp = std::make_shared<const KripkeModel>(std::move(m));
    ++yielded;
    if (!yield({sp, std::move(point), std::move(sigma)})) break;
  }
  return yielded;
}

Verdict find_countermodel(const Formula& f, const Bounds& b) {
  EnumSignature sig = signature_of(f);
  Verdict v;
  enumerate_models(b, sig, [&](const PointedModel& pm) {
    if (!eval(pm, f)) {
      v.countermodel = pm;
      return false;
    }
    return true;
  });
  if (v.countermodel) {
    // self-verification: the reported countermodel must refute f
    if (eval(*v.countermodel, f))
      throw SearchError("countermodel does not refute the formula");
    v.valid_within_bounds = false;
  }
  return v;
}

// ------------------------------------------------------------ random input

GenOptions default_gen_options() {
  GenOptions g;
  g.sig.agents = {"i"};
  g.sig.names = {"a", "b"};
  g.sig.variables = {"x", "y"};
  g.sig.predicates = {{"P", 1}};
  return g;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Formula random_atom(std::mt19937_64& rng, const GenOptions& g) {
  if (!g.sig.predicates.empty() && chance(rng, 0.5)) {
    auto it = g.sig.predicates.begin();
    std::advance(it, pick(rng, g.sig.predicates.size()));
    std::vector<Term> args;
    for (std::size_t k = 0; k < it->second; ++k) args.push_back(random_term(rng, g));
    return Formula::pred(it->first, std::move(args));
  }
  return Formula::eq(random_term(rng, g), random_term(rng, g));
}

Formula random_formula_rec(std::mt19937_64& rng, const GenOptions& g,
                           std::size_t depth) {
  if (depth == 0) return random_atom(rng, g);
  const bool dynamic_ok =
      (g.allow_announce || g.allow_update) && chance(rng, g.dynamic_prob);
  if (dynamic_ok) {
    bool announce = g.allow_announce && (!g.allow_update || chance(rng, 0.5));
    if (announce)
      return Formula::announce(random_formula_rec(rng, g, depth - 1),
                               random_formula_rec(rng, g, depth - 1));
    EventModel em = random_event_model(rng, g);
    std::string e = em.events[pick(rng, em.events.size())];
    return Formula::update(std::move(em), e,
                           random_formula_rec(rng, g, depth - 1));
  }
  switch (pick(rng, 5)) {
    case 0:
      return random_atom(rng, g);
    case 1:
      return Formula::negation(random_formula_rec(rng, g, depth - 1));
    case 2:
      return Formula::conj(random_formula_rec(rng, g, depth - 1),
                           random_formula_rec(rng, g, depth - 1));
    case 3:
      if (!g.sig.agents.empty())
        return Formula::know(g.sig.agents[pick(rng, g.sig.agents.size())],
                             random_formula_rec(rng, g, depth - 1));
      return random_atom(rng, g);
    default:
      if (!g.sig.variables.empty())
        return Formula::assign(g.sig.variables[pick(rng, g.sig.variables.size())],
                               random_term(rng, g),
                               random_formula_rec(rng, g, depth - 1));
      return random_atom(rng, g);
  }
}

}  // namespace

Term random_term(std::mt19937_64& rng, const GenOptions& g) {
  const bool want_var =
      !g.sig.variables.empty() && (g.sig.names.empty() || chance(rng, 0.5));
  if (want_var) return Term::var(g.sig.variables[pick(rng, g.sig.variables.size())]);
  if (g.sig.names.empty()) throw SearchError("random_term: no symbols to draw from");
  return Term::name(g.sig.names[pick(rng, g.sig.names.size())]);
}

Formula random_formula(std::mt19937_64& rng, const GenOptions& g) {
  return random_formula_rec(rng, g, g.max_depth);
}

EventModel random_event_model(std::mt19937_64& rng, const GenOptions& g) {
  EventModel em;
  em.label = "E";
  const std::size_t n = 1 + pick(rng, g.max_events);
  em.events = numbered("e", n);
  GenOptions pre_gen = g;
  pre_gen.dynamic_prob = 0.0;
  pre_gen.allow_announce = pre_gen.allow_update = false;
  pre_gen.max_depth = 1;
  for (const auto& e : em.events)
    em.pre.emplace(e, random_formula_rec(rng, pre_gen, pre_gen.max_depth));
  for (const auto& agent : g.sig.agents) {
    auto& r = em.relations[agent];
    for (const auto& e : em.events)
      for (const auto& f : em.events)
        if (chance(rng, 0.5)) r.insert({e, f});
  }
  if (g.allow_pos && !g.sig.names.empty()) {
    for (const auto& e : em.events)
      if (chance(rng, 0.7)) {
        const std::string& from = g.sig.names[pick(rng, g.sig.names.size())];
        const std::string& to = g.sig.names[pick(rng, g.sig.names.size())];
        if (from != to) em.pos[e][from] = to;
      }
  }
  return em;
}

// --------------------------------------------------------------- axiom fuzz

namespace {

const char* const kAllSchemas[] = {
    "TAUT", "DISTK", "ID",    "SYM",    "TRANS",  "SUBAS",  "SUBP",  "RIGIDP",
    "RIGIDN", "KAS", "DETAS", "DAS",    "EFAS",   "SUB2AS", "T",     "4",
    "5",    "AATOM", "ANEG",  "ACON",   "AK",     "ACOM",   "AASSI", "UATOM",
    "UATOM'", "UNEG", "UCON", "UK",     "UCOM",   "UASSI",  "UASSI'"};

Formula random_taut(std::mt19937_64& rng, const GenOptions& g) {
  Formula phi = random_formula_rec(rng, g, 1);
  Formula psi = random_formula_rec(rng, g, 1);
  switch (pick(rng, 5)) {
    case 0: return sugar::implies(phi, phi);
    case 1: return sugar::disj(phi, Formula::negation(phi));
    case 2: return sugar::implies(Formula::conj(phi, psi), phi);
    case 3: return sugar::implies(phi, sugar::implies(psi, phi));
    default:
      return sugar::implies(Formula::conj(phi, psi), Formula::conj(psi, phi));
  }
}

EventRef random_event_ref(std::mt19937_64& rng, GenOptions g, bool with_pos) {
  g.allow_pos = with_pos;
  EventModel em = random_event_model(rng, g);
  if (with_pos && em.pos.empty() && g.sig.names.size() >= 2)
    em.pos[em.events[0]][g.sig.names[0]] = g.sig.names[1];
  std::string e = em.events[pick(rng, em.events.size())];
  return {std::make_shared<const EventModel>(std::move(em)), std::move(e)};
}

Bindings random_bindings(const std::string& schema, std::mt19937_64& rng,
                         const GenOptions& g) {
  Bindings b;
  auto var = [&] { return g.sig.variables[pick(rng, g.sig.variables.size())]; };
  auto agent = [&] { return g.sig.agents[pick(rng, g.sig.agents.size())]; };
  auto term = [&] { return random_term(rng, g); };
  auto formula = [&] { return random_formula_rec(rng, g, 2); };

  if (schema == "TAUT") {
    b.emplace("phi", random_taut(rng, g));
  } else if (schema == "DISTK" || schema == "AK") {
    b.emplace("i", agent());
    b.emplace("phi", formula());
    if (schema == "DISTK") b.emplace("psi", formula());
    else b.emplace("psi", formula());
  } else if (schema == "ID") {
    b.emplace("t", term());
  } else if (schema == "SYM") {
    b.emplace("t", term());
    b.emplace("u", term());
  } else if (schema == "TRANS") {
    b.emplace("t", term());
    b.emplace("u", term());
    b.emplace("v", term());
  } else if (schema == "SUBAS") {
    b.emplace("t", term());
    b.emplace("u", term());
    b.emplace("x", var());
    b.emplace("phi", formula());
  } else if (schema == "SUBP") {
    auto it = g.sig.predicates.begin();
    b.emplace("P", it->first);
    std::vector<Term> ts, us;
    for (std::size_t k = 0; k < it->second; ++k) {
      ts.push_back(term());
      us.push_back(term());
    }
    b.emplace("ts", std::move(ts));
    b.emplace("us", std::move(us));
  } else if (schema == "RIGIDP" || schema == "RIGIDN") {
    b.emplace("x", var());
    b.emplace("y", var());
    b.emplace("i", agent());
  } else if (schema == "KAS") {
    b.emplace("x", var());
    b.emplace("t", term());
    b.emplace("phi", formula());
    b.emplace("psi", formula());
  } else if (schema == "DETAS") {
    b.emplace("x", var());
    b.emplace("t", term());
    b.emplace("phi", formula());
  } else if (schema == "DAS" || schema == "EFAS") {
    b.emplace("x", var());
    b.emplace("t", term());
  } else if (schema == "SUB2AS") {
    Formula phi = formula();
    std::string x = var();
    std::string y = var();
    if (!is_admissible(phi, x, y)) y = fresh_var({phi});
    b.emplace("phi", std::move(phi));
    b.emplace("x", std::move(x));
    b.emplace("y", std::move(y));
  } else if (schema == "T" || schema == "4" || schema == "5") {
    b.emplace("i", agent());
    b.emplace("phi", formula());
  } else if (schema == "AATOM") {
    b.emplace("psi", formula());
    b.emplace("p", random_atom(rng, g));
  } else if (schema == "ANEG") {
    b.emplace("psi", formula());
    b.emplace("phi", formula());
  } else if (schema == "ACON" || schema == "ACOM") {
    b.emplace("psi", formula());
    b.emplace("phi", formula());
    b.emplace("chi", formula());
  } else if (schema == "AASSI") {
    Formula psi = formula(), phi = formula();
    std::string x = var();
    Term t = term();
    b.emplace("z", fresh_var({psi, phi}, {t, Term::var(x)}));
    b.emplace("psi", std::move(psi));
    b.emplace("phi", std::move(phi));
    b.emplace("x", std::move(x));
    b.emplace("t", std::move(t));
  } else if (schema == "UATOM" || schema == "UATOM'") {
    b.emplace("E", random_event_ref(rng, g, schema == "UATOM'"));
    b.emplace("p", random_atom(rng, g));
  } else if (schema == "UNEG") {
    b.emplace("E", random_event_ref(rng, g, false));
    b.emplace("phi", formula());
  } else if (schema == "UCON") {
    b.emplace("E", random_event_ref(rng, g, false));
    b.emplace("phi", formula());
    b.emplace("psi", formula());
  } else if (schema == "UK") {
    b.emplace("E", random_event_ref(rng, g, false));
    b.emplace("i", agent());
    b.emplace("phi", formula());
  } else if (schema == "UCOM") {
    b.emplace("E", random_event_ref(rng, g, false));
    b.emplace("F", random_event_ref(rng, g, false));
    b.emplace("phi", formula());
  } else if (schema == "UASSI" || schema == "UASSI'") {
    EventRef E = random_event_ref(rng, g, schema == "UASSI'");
    Formula phi = formula();
    std::string x = var();
    Term t = term();
    std::vector<Formula> avoid{phi};
    for (const auto& e : E.model->events) avoid.push_back(E.model->pre_of(e));
    b.emplace("z", fresh_var(avoid, {t, Term::var(x)}));
    b.emplace("E", std::move(E));
    b.emplace("phi", std::move(phi));
    b.emplace("x", std::move(x));
    b.emplace("t", std::move(t));
  } else {
    throw SearchError("random_bindings: unknown schema '" + schema + "'");
  }
  return b;
}

}  // namespace

bool FuzzReport::ok() const {
  return std::all_of(per_schema.begin(), per_schema.end(),
                     [](const FuzzResult& r) { return r.failures == 0; });
}

std::string FuzzReport::summary() const {
  std::ostringstream out;
  out << "system " << to_string(system) << "\n";
  for (const auto& r : per_schema) {
    out << r.schema << ": " << r.instances << " instances, " << r.failures
        << " failures" << (r.failures == 0 ? " [pass]" : " [FAIL]") << "\n";
    for (const auto& note : r.failure_notes) out << "  " << note << "\n";
  }
  return out.str();
}

FuzzReport fuzz_axioms(System system, std::uint64_t per_schema,
                       const Bounds& exhaustive, std::uint64_t sampled_count,
                       const Bounds& sampled, std::uint64_t seed) {
  FuzzReport report;
  report.system = system;
  std::mt19937_64 rng(seed);
  GenOptions g = default_gen_options();
  g.dynamic_prob = 0.0;
  g.allow_announce = g.allow_update = false;

  for (const char* schema : kAllSchemas) {
    if (!schema_in_system(schema, system)) continue;
    FuzzResult result;
    result.schema = schema;
    const bool s5_only =
        std::string(schema) == "T" || std::string(schema) == "4" ||
        std::string(schema) == "5";
    for (std::uint64_t k = 0; k < per_schema; ++k) {
      std::optional<Formula> instance;
      for (int attempt = 0; attempt < 10 && !instance; ++attempt) {
        try {
          instance = instantiate_schema(schema, random_bindings(schema, rng, g));
        } catch (const ProofError&) {
        }
      }
      if (!instance)
        throw SearchError(std::string("fuzz_axioms: cannot instantiate ") + schema);
      ++result.instances;

      auto note_failure = [&](const PointedModel& pm) {
        ++result.failures;
        if (result.failure_notes.size() < 5)
          result.failure_notes.push_back(to_string(*instance) + "  falsified by  " +
                                         describe(pm));
      };

      Bounds eb = exhaustive;
      if (s5_only) eb.model_class = ModelClass::Epistemic;
      Verdict v = find_countermodel(*instance, eb);
      if (!v.valid_within_bounds) {
        note_failure(*v.countermodel);
        continue;
      }
      if (sampled_count > 0) {
        Bounds sb = sampled;
        if (s5_only) sb.model_class = ModelClass::Epistemic;
        EnumSignature sig = signature_of(*instance);
        sample_models(sb, sig, sampled_count, rng, [&](const PointedModel& pm) {
          if (!eval(pm, *instance)) {
            note_failure(pm);
            return false;
          }
          return true;
        });
      }
    }
    report.per_schema.push_back(std::move(result));
  }
  return report;
}

}  // namespace delas
