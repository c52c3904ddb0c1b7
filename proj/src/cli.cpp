#include "leo/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

namespace leo::cli {

namespace fs = std::filesystem;

namespace {

Rational rational_from_json(const json& v)
{
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw Error("expected an integer or an \"a/b\" string, got " + v.dump());
}

Integer integer_from_json(const json& v)
{
    const Rational r = rational_from_json(v);
    if (r.get_den() != 1) throw Error("expected an integer, got " + v.dump());
    return r.get_num();
}

json integer_json(const Integer& n)
{
    if (n.fits_slong_p()) return n.get_si();
    return to_string(n);
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& what)
{
    if (!j.is_object()) throw Error(what + " must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) throw Error("unknown field in " + what + ": " + k);
    }
}

// Squarefree m with Q(sqrt m) = Q(sqrt D), D > 0.
long squarefree_part(const Integer& D)
{
    if (!D.fits_ulong_p()) throw Error("discriminant too large");
    long m = 1;
    for (const auto& [q, e] : factor(D.get_ui())) {
        if (e % 2) m *= static_cast<long>(q);
    }
    return m;
}

json perm_json(const Perm& g)
{
    json a = json::array();
    for (auto x : g) a.push_back(static_cast<int>(x));
    return a;
}

json terms_json(const GroupTable& t, const ArtinDecomposition& d)
{
    json terms = json::array();
    for (const auto& term : d.terms) {
        json elems = json::array();
        for (int g : term.subgroup.elements) elems.push_back(perm_json(t.group->element(g)));
        terms.push_back({{"subgroup_order", term.subgroup.order()},
                         {"coefficient", integer_json(term.coefficient)},
                         {"elements", elems}});
    }
    return terms;
}

}  // namespace

FieldInput parse_field(const json& j)
{
    reject_unknown_keys(j, {"label", "poly"}, "field file");
    if (!j.contains("poly") || !j["poly"].is_array() || j["poly"].empty()) throw Error("field file needs a nonempty poly array");
    FieldInput f;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw Error("label must be a string");
        f.label = j["label"].get<std::string>();
    }
    std::vector<Rational> c;
    for (const auto& v : j["poly"]) c.push_back(rational_from_json(v));
    f.poly = RatPolynomial(std::move(c));
    if (f.poly.degree() < 1 || !f.poly.is_monic() || !f.poly.has_integer_coefficients()) {
        throw Error("poly must be monic with integer coefficients, constant term first");
    }
    return f;
}

FieldInput load_field_file(const std::string& path)
{
    FieldInput f = parse_field(read_json_file(path));
    if (f.label.empty()) f.label = fs::path(path).stem().string();
    return f;
}

std::vector<FactoredUnit> parse_units(const json& j, const FieldPtr& field)
{
    if (!j.is_array()) throw Error("units file must be a list of units");
    std::vector<FactoredUnit> units;
    for (const auto& u : j) {
        if (!u.is_array() || u.empty()) throw Error("each unit must be a nonempty list of factors");
        std::vector<UnitFactor> factors;
        for (const auto& f : u) {
            reject_unknown_keys(f, {"coords", "exp"}, "unit factor");
            if (!f.contains("coords") || !f["coords"].is_array()) throw Error("unit factor needs coords");
            std::vector<Rational> coords;
            for (const auto& v : f["coords"]) coords.push_back(rational_from_json(v));
            if (static_cast<int>(coords.size()) > field->degree()) throw Error("too many coords for the field degree");
            coords.resize(static_cast<std::size_t>(field->degree()), Rational(0));
            const Integer e = f.contains("exp") ? integer_from_json(f["exp"]) : Integer(1);
            factors.push_back({field->element(std::move(coords)), e});
        }
        units.emplace_back(field, std::move(factors));
    }
    return units;
}

std::vector<FactoredUnit> load_units_file(const std::string& path, const FieldPtr& field)
{
    return parse_units(read_json_file(path), field);
}

std::optional<unsigned long> match_real_cyclotomic(const RatPolynomial& poly)
{
    const int d = poly.degree();
    if (d < 2) return std::nullopt;
    const unsigned long limit = 8UL * static_cast<unsigned long>(d) * static_cast<unsigned long>(d) + 8;
    for (unsigned long n = 5; n <= limit; ++n) {
        if (n % 4 == 2 || euler_phi(n) != 2UL * static_cast<unsigned long>(d)) continue;
        if (real_cyclotomic_polynomial(n) == poly) return n;
    }
    return std::nullopt;
}

LeopoldtCertificate run_verify(const FieldInput& input, const VerifyConfig& cfg)
{
    LeopoldtOptions opts;
    opts.start_precision = cfg.start_precision;
    opts.max_precision = cfg.max_precision;
    opts.seed = cfg.seed;
    LeopoldtCertificate cert;
    cert.label = input.label;
    cert.p = cfg.p;
    cert.seed = cfg.seed;
    std::string method;
    try {
        FieldPtr field = NumberField::create(input.poly, input.label);
        std::vector<FactoredUnit> units;
        const int n = field->degree();
        const bool usable = field->is_totally_real() && is_irreducible_totally_real(field->poly());
        if (cfg.units_file) {
            method = "supplied";
            units = load_units_file(*cfg.units_file, field);
        } else if (n == 1 || !usable) {
            method = "none";
        } else if (n == 2) {
            const Rational b = input.poly.coeff(1), c = input.poly.coeff(0);
            const Rational D = b * b - 4 * c;
            field = quadratic_field(squarefree_part(D.get_num()));
            units = {quadratic_fundamental_unit(squarefree_part(D.get_num()))};
            method = "quadratic";
        } else if (auto m = match_real_cyclotomic(input.poly)) {
            field = real_cyclotomic_field(*m);
            units = cyclotomic_xi_units(*m);
            method = "cyclotomic";
        } else {
            method = "relation";
            RelationSearchOptions ro;
            ro.target = static_cast<std::size_t>(n - 1);
            ro.seed = cfg.seed;
            ro.avoid_prime = cfg.p;
            ro.automorphisms = find_automorphisms(field).automorphisms;
            if (static_cast<int>(ro.automorphisms.size()) == n) opts.automorphisms = ro.automorphisms;
            units = relation_search_units(field, ro).units;
        }
        opts.unit_method = method;
        cert = verify_leopoldt(field, cfg.p, units, opts);
    } catch (const Error& e) {
        cert.status = LeopoldtStatus::error;
        cert.message = e.what();
        cert.unit_method = method.empty() ? "none" : method;
    }
    cert.label = input.label;
    return cert;
}

json certificate_json(const LeopoldtCertificate& cert, long elapsed_ms)
{
    json j;
    j["label"] = cert.label;
    j["p"] = cert.p;
    j["status"] = to_string(cert.status);
    j["precision"] = cert.precision;
    j["valuation"] = cert.valuation ? json(*cert.valuation) : json(nullptr);
    j["units"] = {{"method", cert.unit_method}, {"seed", cert.seed}};
    if (cert.status == LeopoldtStatus::error) j["message"] = cert.message;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

json stark_report_json(const StarkReport& r)
{
    json j;
    j["descriptor"] = r.descriptor;
    j["p"] = r.p;
    j["precision"] = r.precision;
    j["effective_precision"] = r.effective_precision;
    j["real_bits"] = r.real_bits;
    j["archimedean_residual"] = r.archimedean_residual ? json(r.archimedean_residual->to_string(6)) : json(nullptr);
    j["padic_residual_valuation"] = r.padic_residual_valuation ? json(*r.padic_residual_valuation) : json(nullptr);
    j["certified_digits"] = r.certified_digits ? json(*r.certified_digits) : json(nullptr);
    j["archimedean"] = to_string(r.archimedean);
    j["padic"] = to_string(r.padic);
    j["notes"] = r.notes;
    return j;
}

json group_table_json(const GroupTable& t)
{
    json classes = json::array();
    for (std::size_t c = 0; c < t.class_count(); ++c) {
        classes.push_back({{"size", t.class_size(c)}, {"representative", perm_json(t.group->element(t.group->classes()[c].front()))}});
    }
    json chars = json::array();
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
        json values = json::array();
        for (const auto& v : t.characters[i]) values.push_back(v.to_string());
        chars.push_back({{"index", i}, {"name", t.names[i]}, {"values", values}});
    }
    return {{"group", t.tag}, {"order", t.order()}, {"classes", classes}, {"characters", chars}};
}

json artin_json(const GroupTable& t, std::size_t character, const ArtinDecomposition& d)
{
    return {{"group", t.tag},
            {"character", t.names.at(character)},
            {"n_rho", integer_json(d.n_rho)},
            {"terms", terms_json(t, d)}};
}

json perm_rc_json(const GroupTable& t, const PermRcResult& r)
{
    json w = json::array();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        w.push_back({{"character", t.names[i]}, {"n_rho", integer_json(r.witnesses[i].n_rho)}, {"terms", terms_json(t, r.witnesses[i])}});
    }
    json j = {{"group", t.tag}, {"holds", r.holds}, {"witnesses", w}};
    if (!r.holds) j["reason"] = r.reason;
    return j;
}

int exit_code(LeopoldtStatus s)
{
    switch (s) {
    case LeopoldtStatus::verified: return kOk;
    case LeopoldtStatus::undetermined: return kUndetermined;
    case LeopoldtStatus::error: return kFailure;
    }
    return kFailure;
}

int exit_code(const StarkReport& r)
{
    if (r.archimedean == Verdict::fail || r.padic == Verdict::fail) return kFailure;
    if (r.archimedean == Verdict::skipped || r.padic == Verdict::skipped) return kUndetermined;
    return kOk;
}

int BatchSummary::exit_code() const
{
    if (errors) return kFailure;
    if (undetermined) return kUndetermined;
    return kOk;
}

unsigned default_workers()
{
    if (const char* env = std::getenv("LEOSTARK_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

BatchSummary run_batch(const BatchConfig& cfg)
{
    if (!fs::is_directory(cfg.dir)) throw Error("not a directory: " + cfg.dir);
    if (cfg.resume && !cfg.out) throw Error("--resume needs an output file");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cfg.dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    std::set<std::string> done;
    if (cfg.resume && fs::exists(*cfg.out)) {
        std::ifstream in(*cfg.out);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                const json j = json::parse(line);
                if (j.value("p", 0UL) == cfg.verify.p) done.insert(j.at("label").get<std::string>());
            } catch (const std::exception&) {
                // A torn last line from an interrupted run is redone.
            }
        }
    }

    struct Job {
        std::optional<FieldInput> field;
        std::string label;
        std::string load_error;
    };
    BatchSummary summary;
    summary.fields = files.size();
    std::vector<Job> jobs;
    for (const auto& f : files) {
        Job job;
        try {
            job.field = load_field_file(f.string());
            job.label = job.field->label;
        } catch (const Error& e) {
            job.label = f.stem().string();
            job.load_error = e.what();
        }
        if (done.count(job.label)) {
            ++summary.skipped;
            continue;
        }
        jobs.push_back(std::move(job));
    }

    std::ofstream file;
    if (cfg.out) {
        file.open(*cfg.out, cfg.resume ? std::ios::app : std::ios::trunc);
        if (!file) throw Error("cannot write " + *cfg.out);
    }
    std::ostream& out = cfg.out ? static_cast<std::ostream&>(file) : std::cout;

    std::vector<std::optional<LeopoldtCertificate>> results(jobs.size());
    std::vector<long> elapsed(jobs.size(), 0);
    std::mutex mu;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next++;
            if (i >= jobs.size()) return;
            const auto t0 = std::chrono::steady_clock::now();
            LeopoldtCertificate cert;
            if (jobs[i].field) {
                cert = run_verify(*jobs[i].field, cfg.verify);
            } else {
                cert.label = jobs[i].label;
                cert.p = cfg.verify.p;
                cert.unit_method = "none";
                cert.seed = cfg.verify.seed;
                cert.message = jobs[i].load_error;
            }
            const long ms = static_cast<long>(
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
            {
                std::lock_guard<std::mutex> lock(mu);
                results[i] = std::move(cert);
                elapsed[i] = ms;
            }
            ready.notify_one();
        }
    };
    const unsigned n_workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);

    // The only writer: emits records in input order as they complete.
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::unique_lock<std::mutex> lock(mu);
        ready.wait(lock, [&] { return results[i].has_value(); });
        const LeopoldtCertificate cert = *results[i];
        const long ms = elapsed[i];
        lock.unlock();
        out << certificate_json(cert, ms).dump() << '\n';
        out.flush();
        switch (cert.status) {
        case LeopoldtStatus::verified: ++summary.verified; break;
        case LeopoldtStatus::undetermined: ++summary.undetermined; break;
        case LeopoldtStatus::error: ++summary.errors; break;
        }
    }
    for (auto& t : pool) t.join();
    return summary;
}

}  // namespace leo::cli
