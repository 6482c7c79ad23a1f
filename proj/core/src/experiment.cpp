#include "twave/experiment.hpp"

#include "twave/bea.hpp"
#include "twave/dtw.hpp"
#include "twave/exact.hpp"
#include "twave/nonlin.hpp"
#include "twave/pdesim.hpp"
#include "twave/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace twave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Accepts plain numbers plus the forms "sqrt(x)", "a*sqrt(x)", "pi", "a*pi", "2^k".
double parseNumber(const std::string& key, const std::string& raw)
{
    const std::string s = trim(raw);
    auto plain = [&](const std::string& t) -> double {
        const std::string u = trim(t);
        if (u == "pi") return std::numbers::pi;
        if (u.rfind("sqrt(", 0) == 0 && u.back() == ')') {
            const double x = std::stod(u.substr(5, u.size() - 6));
            if (x < 0.0) throw std::invalid_argument("negative sqrt");
            return std::sqrt(x);
        }
        if (const auto c = u.find('^'); c != std::string::npos)
            return std::pow(std::stod(u.substr(0, c)), std::stod(u.substr(c + 1)));
        std::size_t used = 0;
        const double v = std::stod(u, &used);
        if (used != u.size()) throw std::invalid_argument("trailing characters");
        return v;
    };
    auto product = [&](const std::string& t) {
        double v = 1.0;
        std::size_t st = 0;
        for (;;) {
            const auto star = t.find('*', st);
            v *= plain(t.substr(st, star == std::string::npos ? std::string::npos : star - st));
            if (star == std::string::npos) return v;
            st = star + 1;
        }
    };
    try {
        const auto slash = s.find('/');
        const double v = slash == std::string::npos ? product(s) : product(s.substr(0, slash)) / product(s.substr(slash + 1));
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + raw + "'");
    }
}

void requirePositive(const RunConfig& c, const std::string& key, double fallback)
{
    const double v = c.number(key, fallback);
    if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- per-experiment defaults ---------------------------------------------------

struct Defaults {
    std::string nonlinearity;
    double c, sigma, kappa, tau;
    long N;
};

Defaults defaultsFor(const std::string& e)
{
    const double s2 = std::numbers::sqrt2;
    if (e == "mckean-front") return {"mckean", 0.5, 0.4, 0.2, 30.0, 0};
    if (e == "mckean-periodic") return {"mckean", 0.5, 0.4, 0.2, 30.0, 65536};
    if (e == "sawtooth") return {"sawtooth", 0.5, 0.4, 0.4 / s2, 10.0, 1024};
    if (e == "smooth-newton") return {"sine", 1.3, 1.0, 1.0 / s2, 15.0832 / 2.0, 64};
    if (e == "continuation") return {"sine", 1.3, 1.0, 1.0 / s2, std::numbers::pi, 64};
    if (e == "bea-ladder") return {"sine", 1.3, 0.2, 0.2, std::numbers::pi, 64};
    if (e == "bea-contour") return {"sine", 1.3, 0.7, 0.7, std::numbers::pi, 64};
    if (e == "resonance-compare") return {"sine", 1.3, 1.0, 1.0 / s2, std::numbers::pi, 64};
    if (e == "pde-transport") return {"sine", 0.5, 0.02, 0.01, 3.2, 64};
    if (e == "steady-state") return {"appendix", 0.0, 1.0, 1.0, 1.0, 0};
    throw ConfigError("unknown experiment '" + e + "'");
}

bool needsWave(const std::string& e)
{
    return e != "mckean-front" && e != "steady-state";
}

Nonlinearity makeNonlinearity(const RunConfig& c, const Defaults& d)
{
    const std::string name = c.text("nonlinearity", d.nonlinearity);
    try {
        return nonlinearityFromName(name, c.number("a", 0.5));
    } catch (const std::exception& e) {
        throw ConfigError("key 'nonlinearity': " + std::string(e.what()));
    }
}

WaveParams makeParams(const RunConfig& c, const Defaults& d)
{
    WaveParams p;
    p.c = c.number("c", d.c);
    p.sigma = c.number("sigma", d.sigma);
    p.kappa = c.number("kappa", d.kappa);
    p.tau = c.has("T") ? 0.5 * c.number("T", 2.0 * d.tau) : c.number("tau", d.tau);
    return p;
}

std::vector<double> tGrid(const RunConfig& c, double lo, double hi, double step)
{
    const double a = c.number("Tmin", lo), b = c.number("Tmax", hi), h = c.number("Tstep", step);
    std::vector<double> g;
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    for (long k = 0; k <= n; ++k) g.push_back(a + static_cast<double>(k) * h);
    return g;
}

std::vector<double> cellGrid(double lo, double hi, long n)
{
    std::vector<double> g;
    for (long i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return g;
}

// ---- artifact writing ------------------------------------------------------------

class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}
    std::ofstream open(const std::string& name)
    {
        fs::create_directories(dir_);
        const fs::path p = dir_ / name;
        std::ofstream os(p, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + p.string());
        files_.push_back(p);
        return os;
    }
    void writeJson(const std::string& name, const json& j)
    {
        auto os = open(name);
        os << j.dump(2) << '\n';
    }
    const std::vector<fs::path>& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
};

void writeSampledWave(std::ostream& os, const FourierWave& w, int points)
{
    os << "xi,phi\n";
    const int M = std::max(points, 2 * w.N() + 1);
    const auto v = w.samples(M);
    const int stride = std::max(1, M / points);
    for (int j = 0; j < M; j += stride) os << fmt(j * w.period() / M) << ',' << fmt(v[static_cast<std::size_t>(j)]) << '\n';
}

json paramsJson(const WaveParams& p)
{
    return {{"c", p.c}, {"sigma", p.sigma}, {"kappa", p.kappa}, {"tau", p.tau}, {"T", p.period()}};
}

json newtonJson(const NewtonRun& r, const std::string& coeffFile)
{
    json j{{"params", paramsJson(r.params)},
           {"N", r.N},
           {"converged", r.converged},
           {"status", toString(r.status)},
           {"residualHistory", r.residualHistory},
           {"resonanceR", std::isfinite(r.resonanceR) ? json(r.resonanceR) : json(nullptr)},
           {"tailMax", r.tailMax}};
    if (!coeffFile.empty()) j["coefficients"] = coeffFile;
    return j;
}

struct Outcome {
    json flags = json::object();
    bool hardError = false;
    std::string reason;
};

// ---- experiments ----------------------------------------------------------------

Outcome runMcKeanFront(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const WaveParams p = makeParams(c, d);
    const double L = c.number("halfwidth", 10.0);
    const long n = c.integer("samples", 2001);
    auto os = out.open("front.csv");
    os << "xi,phi\n";
    for (long k = 0; k < n; ++k) {
        const double xi = -L + 2.0 * L * static_cast<double>(k) / static_cast<double>(n - 1);
        os << fmt(xi) << ',' << fmt(mckeanFront(p.c, 0.0, xi)) << '\n';
    }
    json zeros = json::object();
    auto pack = [](const std::vector<cplx>& z) {
        json a = json::array();
        for (const auto& s : z) a.push_back({s.real(), s.imag()});
        return a;
    };
    if (std::abs(p.sigma - p.kappa) <= 1e-12 * p.kappa)
        zeros["sigmaEqKappa"] = pack(rdiscZerosSigmaEqKappa(p.c, p.kappa, static_cast<int>(c.integer("zeros", 8))));
    if (std::abs(p.sigma - 2.0 * p.kappa) <= 1e-12 * p.kappa)
        zeros["sigmaEq2Kappa"] = pack(rdiscZerosSigmaEq2Kappa(p.c, p.kappa));
    out.writeJson("front.json", {{"params", paramsJson(p)}, {"continuousDecayRate", 1.0 / std::sqrt(1.0 - p.c * p.c)},
                                 {"rdiscZeros", zeros}});
    return {};
}

Outcome runMcKeanPeriodic(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto mw = mckeanPeriodicWave(c.number("a", 0.5), p, N);
    {
        auto os = out.open("coefficients.csv");
        writeWaveCsv(os, mw.wave);
    }
    {
        auto os = out.open("wave.csv");
        writeSampledWave(os, mw.wave, static_cast<int>(c.integer("samples", 4000)));
    }
    const auto& g = mw.diagnostics;
    Outcome o;
    o.flags["divergent"] = g.divergent;
    out.writeJson("diagnostics.json", {{"params", paramsJson(p)},
                                       {"N", N},
                                       {"trailingMax", g.trailingMax},
                                       {"amplification", g.amplification},
                                       {"divergent", g.divergent},
                                       {"minDenominator", g.minDenominator}});
    return o;
}

Outcome runSawtooth(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto sd = sawtoothDiscreteWave(p, N);
    const auto an = sawtoothPeriodicWave(p.c, p.tau);
    {
        auto os = out.open("coefficients.csv");
        writeWaveCsv(os, sd.wave);
    }
    const int M = 4 * N + 1;
    const auto v = sd.wave.samples(M);
    double err = 0.0;
    {
        auto os = out.open("wave.csv");
        os << "xi,discrete,analytic\n";
        for (int j = 0; j < M; ++j) {
            const double xi = j * p.period() / M;
            const double a = an.value(xi);
            err = std::max(err, std::abs(v[static_cast<std::size_t>(j)] - a));
            os << fmt(xi) << ',' << fmt(v[static_cast<std::size_t>(j)]) << ',' << fmt(a) << '\n';
        }
    }
    Outcome o;
    o.flags["compatibility"] = std::abs(sd.compatibilityResidual) <= 1e-10;
    out.writeJson("sawtooth.json", {{"params", paramsJson(p)},
                                    {"N", N},
                                    {"xiStar", sd.xiStar},
                                    {"analyticXiStar", an.xiStar},
                                    {"compatibilityResidual", sd.compatibilityResidual},
                                    {"rootIterations", sd.rootIterations},
                                    {"maxDeviationFromAnalytic", err}});
    return o;
}

Outcome runSmoothNewton(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto run = smoothNewtonWave(nl, p, N, defaultSeed(nl, p.c, p.period(), N),
                                      static_cast<int>(c.integer("maxIterations", 25)));
    {
        auto os = out.open("coefficients.csv");
        writeWaveCsv(os, run.wave);
    }
    {
        auto os = out.open("wave.csv");
        writeSampledWave(os, run.wave, static_cast<int>(c.integer("samples", 1000)));
    }
    out.writeJson("newton.json", newtonJson(run, "coefficients.csv"));
    Outcome o;
    o.flags["converged"] = run.converged;
    return o;
}

Outcome runContinuation(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto grid = tGrid(c, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi + 1.2, 0.01);
    const auto runs = continuationInT(nl, p.sigma, p.kappa, p.c, grid, N);
    json records = json::array();
    auto os = out.open("resonance.csv");
    os << "T,R,converged\n";
    Outcome o;
    long failed = 0;
    for (const auto& r : runs) {
        records.push_back(newtonJson(r, ""));
        os << fmt(r.params.period()) << ',' << fmt(r.resonanceR) << ',' << (r.converged ? 1 : 0) << '\n';
        failed += r.converged ? 0 : 1;
    }
    out.writeJson("runs.json", records);
    o.flags["converged"] = failed == 0;
    o.flags["failedSolves"] = failed;
    return o;
}

Outcome runBeaLadder(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto hs = c.list("h", {0.4, 0.2, 0.1, 0.05});
    json rows = json::array();
    std::array<std::vector<double>, 3> norms;
    Outcome o;
    bool allConverged = true;
    for (double h : hs) {
        const auto lad = errorLadder(nl, p.c, h, h, p.period(), N, static_cast<int>(c.integer("samples", 1024)));
        allConverged = allConverged && lad.discrete.converged;
        auto os = out.open("ladder_h" + fmt(h) + ".csv");
        os << "xi,e1,e2,e3\n";
        for (std::size_t k = 0; k < lad.xi.size(); ++k)
            os << fmt(lad.xi[k]) << ',' << fmt(lad.error[0][k]) << ',' << fmt(lad.error[1][k]) << ','
               << fmt(lad.error[2][k]) << '\n';
        for (int m = 0; m < 3; ++m) norms[static_cast<std::size_t>(m)].push_back(lad.maxNorm[static_cast<std::size_t>(m)]);
        rows.push_back({{"h", h}, {"converged", lad.discrete.converged}, {"maxNorm", lad.maxNorm}});
    }
    json slopes = json::array();
    if (hs.size() >= 2)
        for (const auto& n : norms) slopes.push_back(fittedSlope(hs, n));
    out.writeJson("ladder.json", {{"c", p.c}, {"T", p.period()}, {"N", N}, {"rows", rows}, {"slopes", slopes}});
    o.flags["converged"] = allConverged;
    return o;
}

Outcome runBeaContour(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto sg = cellGrid(c.number("sigmaMin", 0.2), c.number("sigmaMax", 1.2), c.integer("sigmaCount", 40));
    const auto kg = cellGrid(c.number("kappaMin", 0.2), c.number("kappaMax", 1.2), c.integer("kappaCount", 40));
    const auto res = contourSweep(nl, p.period(), p.c, sg, kg, N, c.threads);
    auto os = out.open("contour.csv");
    os << "sigma,kappa,value\n";
    long failed = 0;
    for (std::size_t i = 0; i < res.sigma.size(); ++i)
        for (std::size_t j = 0; j < res.kappa.size(); ++j) {
            const double v = res.value[i][j];
            failed += std::isnan(v) ? 1 : 0;
            os << fmt(res.sigma[i]) << ',' << fmt(res.kappa[j]) << ',' << (std::isnan(v) ? "nan" : fmt(v)) << '\n';
        }
    Outcome o;
    o.flags["failedCells"] = failed;
    return o;
}

Outcome runResonanceCompare(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    const auto grid = tGrid(c, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi + 1.2, 0.01);
    const auto pts = resonanceComparison(nl, p.sigma, p.kappa, p.c, grid, N);
    auto os = out.open("resonance_compare.csv");
    os << "T,discreteR,modifiedR,converged\n";
    long failed = 0;
    for (const auto& r : pts) {
        os << fmt(r.T) << ',' << fmt(r.discreteR) << ',' << fmt(r.modifiedR) << ',' << (r.converged ? 1 : 0) << '\n';
        failed += r.converged ? 0 : 1;
    }
    Outcome o;
    o.flags["failedSolves"] = failed;
    return o;
}

Outcome runPdeTransport(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    WaveParams p = makeParams(c, d);
    const int N = static_cast<int>(c.integer("N", d.N));
    // the grid must close on the period: round tau to a multiple of sigma/2
    const double cells = std::round(p.period() / p.sigma);
    p.tau = 0.5 * cells * p.sigma;
    const auto run = smoothNewtonWave(nl, p, N, defaultSeed(nl, p.c, p.period(), N));
    Outcome o;
    o.flags["newtonConverged"] = run.converged;
    {
        auto os = out.open("coefficients.csv");
        writeWaveCsv(os, run.wave);
    }
    if (!run.converged) {
        o.hardError = true;
        o.reason = "travelling wave solve did not converge";
        out.writeJson("transport.json", {{"newton", newtonJson(run, "coefficients.csv")}});
        return o;
    }
    const auto rep = waveTransportTest(nl, run.wave, p, c.integer("steps", 1000));
    out.writeJson("transport.json", {{"newton", newtonJson(run, "coefficients.csv")},
                                     {"M", rep.M},
                                     {"steps", rep.steps},
                                     {"dx", rep.dx},
                                     {"dt", rep.dt},
                                     {"cflFlagged", rep.cflFlagged},
                                     {"finalDeviation", rep.finalDeviation},
                                     {"maxDeviation", rep.maxDeviation}});
    o.flags["cflFlagged"] = rep.cflFlagged;
    return o;
}

SteadyScheme schemeFromName(const std::string& s)
{
    if (s == "lobatto3a") return SteadyScheme::LobattoIIIA3;
    if (s == "leapfrog") return SteadyScheme::LeapfrogSpatial;
    if (s == "continuous") return SteadyScheme::Continuous;
    throw ConfigError("key 'schemes': unknown scheme '" + s + "'");
}

std::vector<std::string> splitList(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Outcome runSteadyState(const RunConfig& c, Artifacts& out)
{
    const Defaults d = defaultsFor(c.experiment);
    const Nonlinearity nl = makeNonlinearity(c, d);
    const double near = c.number("saddleNear", -std::numbers::pi);
    const auto eqs = steadyEquilibria(nl, near - 1.5, near + 1.5);
    double saddle = std::numeric_limits<double>::quiet_NaN();
    for (double e : eqs)
        if (nl.derivative(e, 1) > 0.0 && (std::isnan(saddle) || std::abs(e - near) < std::abs(saddle - near))) saddle = e;
    Outcome o;
    if (std::isnan(saddle)) {
        o.hardError = true;
        o.reason = "no saddle of u'' = V'(u) within 1.5 of " + fmt(near);
        return o;
    }
    json rows = json::array();
    for (const auto& name : splitList(c.text("schemes", "lobatto3a,leapfrog,continuous"))) {
        const SteadyScheme sch = schemeFromName(name);
        const auto dxs = sch == SteadyScheme::Continuous ? std::vector<double>{c.number("flowStep", 0.1)}
                                                          : c.list("dx", {0.1, 0.2, 0.4});
        for (double dx : dxs) {
            const auto sc = saddleConnections(nl, sch, dx, saddle);
            char dxs[32];
            std::snprintf(dxs, sizeof dxs, "%g", dx);
            const std::string tag = std::string(toString(sch)) + "_dx" + dxs;
            int k = 0;
            for (const auto* set : {&sc.heteroclinic, &sc.homoclinic})
                for (const auto& orb : *set) {
                    auto os = out.open("orbit_" + tag + "_" + std::to_string(k++) + ".csv");
                    writeOrbitCsv(os, orb);
                }
            rows.push_back({{"scheme", toString(sch)},
                            {"dx", dx},
                            {"saddle", sc.saddle},
                            {"multiplier", sc.multiplier},
                            {"heteroclinic", sc.heteroclinic.size()},
                            {"homoclinic", sc.homoclinic.size()},
                            {"seedsScanned", sc.seedsScanned}});
        }
    }
    out.writeJson("steady.json", {{"nonlinearity", nl.name()}, {"saddle", saddle}, {"runs", rows}});
    return o;
}

} // namespace

// ---- RunConfig --------------------------------------------------------------------

RunConfig RunConfig::fromString(const std::string& text)
{
    RunConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(ss, line)) {
        ++lineNo;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.find('=') == std::string::npos)
            throw ConfigError("line " + std::to_string(lineNo) + ": expected key=value");
        c.set(line);
    }
    return c;
}

RunConfig RunConfig::fromFile(const fs::path& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return fromString(ss.str());
}

void RunConfig::set(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string key = trim(assignment.substr(0, eq)), value = trim(assignment.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key in '" + assignment + "'");
    if (key == "experiment") experiment = value;
    else if (key == "out") outDir = value;
    else if (key == "threads") {
        const double t = parseNumber(key, value);
        if (t < 0.0 || t != std::floor(t)) throw ConfigError("key 'threads' must be a non-negative integer");
        threads = static_cast<unsigned>(t);
    } else values[key] = value;
}

double RunConfig::number(const std::string& key, double fallback) const
{
    const auto it = values.find(key);
    return it == values.end() ? fallback : parseNumber(key, it->second);
}

long RunConfig::integer(const std::string& key, long fallback) const
{
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    const double v = parseNumber(key, it->second);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<long>(v);
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const
{
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

std::vector<double> RunConfig::list(const std::string& key, const std::vector<double>& fallback) const
{
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::vector<double> out;
    for (const auto& s : splitList(it->second)) out.push_back(parseNumber(key, s));
    if (out.empty()) throw ConfigError("key '" + key + "' is an empty list");
    return out;
}

const std::vector<std::string>& experimentNames()
{
    static const std::vector<std::string> names{"mckean-front", "mckean-periodic", "sawtooth",   "smooth-newton",
                                                "continuation", "bea-ladder",      "bea-contour", "resonance-compare",
                                                "pde-transport", "steady-state"};
    return names;
}

std::string configHelp()
{
    return R"(Config keys (file lines key=value, or --set key=value):
  nonlinearity   sine | appendix | sawtooth | mckean       a       McKean threshold (0.5)
  c sigma kappa  wave speed, grid spacing, c*dt            tau | T half period | period
  N              Fourier modes (n = -N..N)                 samples sampled output points
  Tmin Tmax Tstep  continuation and resonance-compare grid (2pi .. 2pi+1.2, 0.01)
  maxIterations  Newton cap (smooth-newton, 25)
  h              bea-ladder list, sigma = kappa = h (0.4,0.2,0.1,0.05)
  sigmaMin sigmaMax sigmaCount kappaMin kappaMax kappaCount  bea-contour grid (0.2,1.2,40)
  steps          pde-transport steps (1000)
  schemes        steady-state: lobatto3a,leapfrog,continuous
  dx             steady-state spacings (0.1,0.2,0.4)   saddleNear (-pi)   flowStep (0.1)
  halfwidth zeros  mckean-front window and zero count
Numbers accept 0.5, 2^16, sqrt(2), 5*sqrt(2), 1/sqrt(2), pi, 2*pi.)";
}

void validate(const RunConfig& c)
{
    const auto& names = experimentNames();
    if (std::find(names.begin(), names.end(), c.experiment) == names.end())
        throw ConfigError("unknown experiment '" + c.experiment + "'");
    const Defaults d = defaultsFor(c.experiment);
    static const std::vector<std::string> known{
        "nonlinearity", "a", "c", "sigma", "kappa", "tau", "T", "N", "samples", "Tmin", "Tmax", "Tstep",
        "maxIterations", "h", "sigmaMin", "sigmaMax", "sigmaCount", "kappaMin", "kappaMax", "kappaCount",
        "steps", "schemes", "dx", "saddleNear", "flowStep", "halfwidth", "zeros"};
    for (const auto& [k, v] : c.values) {
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("unknown key '" + k + "'");
        if (k != "nonlinearity" && k != "schemes") (void)c.list(k, {});
    }
    if (c.experiment != "steady-state") {
        const WaveParams p = makeParams(c, d);
        for (const char* k : {"sigma", "kappa"}) requirePositive(c, k, 1.0);
        if (!(p.tau > 0.0)) throw ConfigError("key 'tau' must be positive");
        if (std::abs(p.c * p.c - 1.0) < 1e-12) throw ConfigError("key 'c': c^2 = 1 is the sonic speed");
        if (c.experiment == "mckean-front" && !(std::abs(p.c) < 1.0))
            throw ConfigError("key 'c': the McKean front needs |c| < 1");
        if (c.experiment == "sawtooth" && !(std::abs(p.c) < 1.0))
            throw ConfigError("key 'c': the sawtooth wave needs |c| < 1");
    }
    if (needsWave(c.experiment)) {
        const long N = c.integer("N", d.N);
        if (N < 1) throw ConfigError("key 'N' must be positive");
        const bool dense = c.experiment != "mckean-periodic" && c.experiment != "sawtooth";
        if (dense && N > 4096) throw ConfigError("key 'N' exceeds 4096 for a dense Newton solve");
        if (c.experiment == "sawtooth" && N > 16384) throw ConfigError("key 'N' exceeds 16384 for the sawtooth solve");
        if (N > (1L << 24)) throw ConfigError("key 'N' too large");
    }
    const Nonlinearity nl = makeNonlinearity(c, d);
    const bool smoothNeeded = c.experiment != "mckean-front" && c.experiment != "mckean-periodic" && c.experiment != "sawtooth";
    if (smoothNeeded && !nl.smooth()) throw ConfigError("key 'nonlinearity': experiment needs a smooth nonlinearity");
    for (const char* k : {"samples", "steps", "maxIterations", "sigmaCount", "kappaCount", "zeros"})
        if (c.has(k) && c.integer(k, 1) < 1) throw ConfigError(std::string("key '") + k + "' must be positive");
    for (const char* k : {"Tstep", "halfwidth", "flowStep"})
        if (c.has(k)) requirePositive(c, k, 1.0);
    if (c.has("Tmin") || c.has("Tmax")) {
        const double a = c.number("Tmin", 2.0 * std::numbers::pi), b = c.number("Tmax", a);
        if (!(a > 0.0) || b < a) throw ConfigError("keys 'Tmin'/'Tmax' must satisfy 0 < Tmin <= Tmax");
    }
    for (const char* k : {"h", "dx"})
        if (c.has(k))
            for (double v : c.list(k, {}))
                if (!(v > 0.0)) throw ConfigError(std::string("key '") + k + "' entries must be positive");
    if (c.experiment == "steady-state")
        for (const auto& s : splitList(c.text("schemes", "lobatto3a"))) (void)schemeFromName(s);
}

RunResult runExperiment(const RunConfig& config)
{
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    Artifacts out(config.outDir);
    RunResult result;
    Outcome o;
    try {
        const std::string& e = config.experiment;
        if (e == "mckean-front") o = runMcKeanFront(config, out);
        else if (e == "mckean-periodic") o = runMcKeanPeriodic(config, out);
        else if (e == "sawtooth") o = runSawtooth(config, out);
        else if (e == "smooth-newton") o = runSmoothNewton(config, out);
        else if (e == "continuation") o = runContinuation(config, out);
        else if (e == "bea-ladder") o = runBeaLadder(config, out);
        else if (e == "bea-contour") o = runBeaContour(config, out);
        else if (e == "resonance-compare") o = runResonanceCompare(config, out);
        else if (e == "pde-transport") o = runPdeTransport(config, out);
        else o = runSteadyState(config, out);
    } catch (const std::exception& ex) {
        o.hardError = true;
        o.reason = ex.what();
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json echo = json::object();
    for (const auto& [k, v] : config.values) echo[k] = v;
    json files = json::array();
    for (const auto& f : out.files()) files.push_back(f.filename().string());
    json manifest{{"experiment", config.experiment},
                  {"config", echo},
                  {"threads", config.threads},
                  {"versions", {{"twave", kVersion}, {"compiler", __VERSION__}}},
                  {"wallTimeSeconds", wall},
                  {"flags", o.flags},
                  {"status", o.hardError ? "failed" : "ok"},
                  {"artifacts", files}};
    if (o.hardError) manifest["failure"] = o.reason;
    out.writeJson("manifest.json", manifest);

    result.exitStatus = o.hardError ? 1 : 0;
    result.failure = o.reason;
    result.files = out.files();
    return result;
}

} // namespace twave
