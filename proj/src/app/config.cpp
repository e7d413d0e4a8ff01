#include "symw/app/config.hpp"

#include <fstream>

#include "symw/error.hpp"
#include "symw/states.hpp"

namespace symw::app {
namespace {

using nlohmann::json;

// A JSON value together with its dotted path, for error messages.
struct Node {
  const json& value;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const { raise(ErrorCode::ConfigInvalid, path + ": " + what); }

  bool has(const char* key) const { return value.is_object() && value.contains(key); }

  Node at(const char* key) const {
    if (!value.is_object()) fail("expected an object");
    const std::string p = path.empty() ? key : path + "." + key;
    if (!value.contains(key)) raise(ErrorCode::ConfigInvalid, p + ": missing required field");
    return {value.at(key), p};
  }

  Node at(std::size_t k) const {
    if (!value.is_array() || k >= value.size()) fail("index out of range");
    return {value.at(k), path + "[" + std::to_string(k) + "]"};
  }

  std::size_t size() const {
    if (!value.is_array()) fail("expected an array");
    return value.size();
  }

  double number() const {
    if (!value.is_number()) fail("expected a number");
    return value.get<double>();
  }

  long long integer() const {
    if (!value.is_number_integer()) fail("expected an integer");
    return value.get<long long>();
  }

  bool boolean() const {
    if (!value.is_boolean()) fail("expected true or false");
    return value.get<bool>();
  }

  std::string string() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }

  double number_or(const char* key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  long long integer_or(const char* key, long long fallback) const { return has(key) ? at(key).integer() : fallback; }
  bool boolean_or(const char* key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }
  std::string string_or(const char* key, std::string fallback) const {
    return has(key) ? at(key).string() : fallback;
  }

  // A number or an array of numbers.
  std::vector<double> numbers() const {
    if (value.is_number()) return {value.get<double>()};
    std::vector<double> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k).number());
    return out;
  }

  Vec3 vec3() const {
    const auto v = numbers();
    if (v.empty() || v.size() > 3) fail("expected 1 to 3 numbers");
    Vec3 out{};
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
    return out;
  }
};

// Runs a domain constructor, turning its validation errors into ConfigInvalid
// at the given node.
template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    n.fail(e.what());
  }
}

GridSpec parse_grid(const Node& n) {
  GridSpec g;
  g.num_particles = static_cast<int>(n.at("particles").integer());
  g.dims_per_particle = static_cast<int>(n.integer_or("dims", 1));
  if (g.num_particles < 1) n.at("particles").fail("must be at least 1");
  if (g.dims_per_particle < 1 || g.dims_per_particle > 3) n.at("dims").fail("must be 1, 2 or 3");
  auto parse_axis = [](const Node& a) {
    Axis axis;
    axis.min = a.at("min").number();
    axis.max = a.at("max").number();
    const long long m = a.at("points").integer();
    if (m < 4 || m > (1LL << 30)) a.at("points").fail("must be at least 4");
    axis.points = static_cast<std::uint32_t>(m);
    if (!(axis.max > axis.min)) a.fail("max must exceed min");
    return axis;
  };
  if (n.has("axes")) {
    const Node axes = n.at("axes");
    if (axes.size() != static_cast<std::size_t>(g.dims_per_particle)) axes.fail("need one axis per dimension");
    for (std::size_t k = 0; k < axes.size(); ++k) g.axes.push_back(parse_axis(axes.at(k)));
  } else {
    g.axes.assign(g.dims_per_particle, parse_axis(n.at("axis")));
  }
  const std::string b = n.string_or("boundary", "dirichlet");
  if (b == "dirichlet")
    g.boundary = Boundary::Dirichlet;
  else if (b == "periodic")
    g.boundary = Boundary::Periodic;
  else
    n.at("boundary").fail("expected dirichlet or periodic");
  return g;
}

PhysicalConstants parse_constants(const Node& n) {
  PhysicalConstants c;
  c.hbar = n.number_or("hbar", 1.0);
  c.mass = n.number_or("mass", 1.0);
  c.charge = n.number_or("charge", 1.0);
  guarded(n, [&] {
    c.validate();
    return 0;
  });
  return c;
}

ScalarPotential parse_potential(const Node& n, const PhysicalConstants& c) {
  const std::string type = n.at("type").string();
  if (type == "none") return zero_potential();
  if (type == "harmonic") {
    const double omega = n.at("omega").number();
    return guarded(n.at("omega"), [&] { return harmonic_trap(omega, c); });
  }
  if (type == "asymmetric") {
    const double w1 = n.at("omega1").number();
    const double w2 = n.at("omega2").number();
    return guarded(n, [&] { return asymmetric_trap(w1, w2, c); });
  }
  if (type == "pairwise") {
    const std::string kernel = n.at("kernel").string();
    const double strength = n.at("strength").number();
    if (kernel == "gaussian") {
      const double width = n.at("width").number();
      if (!(width > 0.0)) n.at("width").fail("must be positive");
      return pairwise(gaussian_kernel(width), strength, "pairwise gaussian");
    }
    if (kernel == "soft_coulomb") {
      const double a = n.at("softening").number();
      return guarded(n.at("softening"), [&] { return pairwise(soft_coulomb_kernel(a), strength, "pairwise soft coulomb"); });
    }
    n.at("kernel").fail("expected gaussian or soft_coulomb");
  }
  if (type == "sum") {
    const Node terms = n.at("terms");
    std::vector<ScalarPotential> parts;
    for (std::size_t k = 0; k < terms.size(); ++k) parts.push_back(parse_potential(terms.at(k), c));
    if (parts.empty()) terms.fail("needs at least one term");
    return sum(std::move(parts));
  }
  n.at("type").fail("expected none, harmonic, pairwise, asymmetric or sum");
}

std::optional<VectorPotential> parse_vector(const Node& n, int dims, bool& uniform) {
  const std::string type = n.at("type").string();
  uniform = true;
  if (type == "none") return std::nullopt;
  if (type == "uniform") {
    const Vec3 amp = n.at("amplitude").vec3();
    const double omega = n.number_or("omega", 0.0);
    return cosine_vector_potential(amp, omega);
  }
  if (type == "rotational") {
    if (dims < 2) n.fail("rotational vector potential needs dims >= 2");
    uniform = false;
    return rotational_vector_potential(n.at("field").number());
  }
  n.at("type").fail("expected none, uniform or rotational");
}

Orbital parse_orbital(const Node& n, const PhysicalConstants& c) {
  const std::string type = n.at("type").string();
  if (type == "ho") {
    std::array<int, 3> q{};
    const Node nn = n.at("n");
    if (nn.value.is_number_integer()) {
      q[0] = static_cast<int>(nn.integer());
    } else {
      if (nn.size() < 1 || nn.size() > 3) nn.fail("expected 1 to 3 quantum numbers");
      for (std::size_t k = 0; k < nn.size(); ++k) q[k] = static_cast<int>(nn.at(k).integer());
    }
    const double omega = n.number_or("omega", 1.0);
    return guarded(n, [&] { return Orbital::harmonic(q, omega, c); });
  }
  if (type == "gaussian") {
    const Vec3 center = n.has("center") ? n.at("center").vec3() : Vec3{};
    const Vec3 momentum = n.has("momentum") ? n.at("momentum").vec3() : Vec3{};
    const double width = n.at("width").number();
    return guarded(n, [&] { return Orbital::gaussian(center, width, momentum, c); });
  }
  n.at("type").fail("expected ho or gaussian");
}

InitialState parse_state(const Node& n, const PhysicalConstants& c, int particles) {
  const std::string type = n.at("type").string();
  InitialState s;
  s.description = type;
  if (type == "product" || type == "slater" || type == "symmetrized_product") {
    const Node list = n.at("orbitals");
    std::vector<Orbital> orbitals;
    for (std::size_t k = 0; k < list.size(); ++k) orbitals.push_back(parse_orbital(list.at(k), c));
    if (orbitals.size() != static_cast<std::size_t>(particles)) list.fail("need one orbital per particle");
    if (type == "product")
      s.build = [orbitals](const GridHandle& g, std::uint64_t) { return product_state(g, orbitals); };
    else if (type == "slater")
      s.build = [orbitals](const GridHandle& g, std::uint64_t) { return slater_state(g, orbitals); };
    else
      s.build = [orbitals](const GridHandle& g, std::uint64_t) { return symmetrized_product_state(g, orbitals); };
    return s;
  }
  if (type == "gaussian") {
    const auto center = n.has("center") ? n.at("center").numbers() : std::vector<double>{0.0};
    const auto width = n.at("width").numbers();
    const auto momentum = n.has("momentum") ? n.at("momentum").numbers() : std::vector<double>{0.0};
    s.build = [=](const GridHandle& g, std::uint64_t) { return gaussian_packet(g, center, width, momentum, c); };
    return s;
  }
  if (type == "random") {
    const long long seed = n.integer_or("seed", 1);
    if (seed < 0) n.at("seed").fail("must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
    s.build = [](const GridHandle& g, std::uint64_t seed) { return random_state(g, seed); };
    return s;
  }
  n.at("type").fail("expected product, slater, symmetrized_product, gaussian or random");
}

Scheme parse_scheme(const Node& n) {
  Scheme s;
  const std::string kind = n.at("kind").string();
  if (kind == "split_operator")
    s.kind = SchemeKind::SplitOperator;
  else if (kind == "implicit_fd")
    s.kind = SchemeKind::ImplicitFD;
  else
    n.at("kind").fail("expected split_operator or implicit_fd");
  s.dt = n.at("dt").number();
  s.solver_tol = n.number_or("solver_tol", s.solver_tol);
  s.max_iters = static_cast<int>(n.integer_or("max_iters", s.max_iters));
  const std::string kinetic = n.string_or("kinetic", "central_difference");
  if (kinetic == "central_difference")
    s.kinetic = KineticSymbol::CentralDifference;
  else if (kinetic == "spectral")
    s.kinetic = KineticSymbol::Spectral;
  else
    n.at("kinetic").fail("expected central_difference or spectral");
  guarded(n, [&] {
    s.validate();
    return 0;
  });
  return s;
}

DiagnosticsSettings parse_diagnostics(const Node& n, int particles) {
  DiagnosticsSettings d;
  const long long every = n.integer_or("record_every", 1);
  if (every < 1) n.at("record_every").fail("must be at least 1");
  d.record_every = static_cast<std::size_t>(every);
  if (n.has("pair")) {
    const Node p = n.at("pair");
    if (p.size() != 2) p.fail("expected two particle indices");
    d.i = static_cast<int>(p.at(std::size_t{0}).integer());
    d.j = static_cast<int>(p.at(std::size_t{1}).integer());
    if (d.i < 0 || d.j < 0 || d.i >= particles || d.j >= particles || d.i == d.j)
      p.fail("particle indices out of range");
  }
  d.mask_eps = n.number_or("mask_eps", d.mask_eps);
  if (!(d.mask_eps > 0.0)) n.at("mask_eps").fail("must be positive");
  d.sign_tol = n.number_or("sign_tol", d.sign_tol);
  if (!(d.sign_tol > 0.0)) n.at("sign_tol").fail("must be positive");
  d.phase = n.boolean_or("phase", d.phase);
  d.sectors = n.boolean_or("sectors", d.sectors);
  d.continuity = n.boolean_or("continuity", d.continuity);
  return d;
}

Expect parse_expect(const Node& n) {
  Expect e;
  const std::string kind = n.at("kind").string();
  if (kind == "conservation")
    e.kind = Expectation::Conservation;
  else if (kind == "negative_control")
    e.kind = Expectation::NegativeControl;
  else if (kind == "mixed_null")
    e.kind = Expectation::MixedNull;
  else
    n.at("kind").fail("expected conservation, negative_control or mixed_null");
  if (n.has("sign")) {
    const long long s = n.at("sign").integer();
    if (s != 1 && s != -1) n.at("sign").fail("must be +1 or -1");
    e.sign = static_cast<int>(s);
  }
  e.max_dS = n.number_or("max_dS", e.max_dS);
  if (n.has("max_phase_integral")) e.max_phase_integral = n.at("max_phase_integral").number();
  if (n.has("max_sector_drift")) e.max_sector_drift = n.at("max_sector_drift").number();
  return e;
}

}  // namespace

Config parse_config(const json& doc) {
  const Node root{doc, ""};
  if (!doc.is_object()) raise(ErrorCode::ConfigInvalid, "<root>: expected an object");
  Config cfg;
  cfg.source = doc;
  cfg.name = root.string_or("name", "unnamed");
  cfg.claim = root.string_or("claim", "");
  cfg.grid = parse_grid(root.at("grid"));
  cfg.H.constants = root.has("constants") ? parse_constants(root.at("constants")) : PhysicalConstants{};

  const std::string mode = root.string_or("mode", "evolve");
  if (mode == "evolve")
    cfg.mode = Mode::Evolve;
  else if (mode == "mixed_null")
    cfg.mode = Mode::MixedNull;
  else
    root.at("mode").fail("expected evolve or mixed_null");

  cfg.initial = parse_state(root.at("initial_state"), cfg.H.constants, cfg.grid.num_particles);
  if (root.has("expect")) cfg.expect = parse_expect(root.at("expect"));

  if (cfg.mode == Mode::MixedNull) {
    cfg.mixed_iters = static_cast<int>(root.integer_or("iterations", 200));
    if (cfg.mixed_iters < 0) root.at("iterations").fail("must be non-negative");
    if (cfg.grid.num_particles != 3) root.at("grid").at("particles").fail("mixed_null mode needs 3 particles");
    return cfg;
  }

  cfg.H.scalar = parse_potential(root.at("potential"), cfg.H.constants);
  if (root.has("vector_potential"))
    cfg.H.vector = parse_vector(root.at("vector_potential"), cfg.grid.dims_per_particle, cfg.vector_is_uniform);
  cfg.scheme = parse_scheme(root.at("scheme"));
  cfg.t_final = root.at("t_final").number();
  if (!(cfg.t_final >= 0.0)) root.at("t_final").fail("must be non-negative");
  cfg.diagnostics = root.has("diagnostics") ? parse_diagnostics(root.at("diagnostics"), cfg.grid.num_particles)
                                            : DiagnosticsSettings{};
  const long long every = root.integer_or("checkpoint_every", 0);
  if (every < 0) root.at("checkpoint_every").fail("must be non-negative");
  cfg.checkpoint_every = static_cast<std::size_t>(every);
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ConfigInvalid, "<root>: " + std::string(e.what()));
  }
  return parse_config(doc);
}

}  // namespace symw::app
