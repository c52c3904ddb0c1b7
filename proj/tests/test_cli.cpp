#include "doctest.h"

#include "leo/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>

using namespace leo;
using namespace leo::cli;
namespace fs = std::filesystem;

namespace {

const std::string kFields = std::string(LEO_TEST_DATA) + "/fields";

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("leostark_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter()
    {
        static int c = 0;
        return c;
    }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

std::vector<std::string> read_lines(const std::string& path)
{
    std::ifstream in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

json without_elapsed(json j)
{
    j.erase("elapsed_ms");
    return j;
}

}  // namespace

TEST_CASE("field files")
{
    auto f = parse_field(json::parse(R"({"label": "a", "poly": [-2, 0, 1]})"));
    CHECK(f.label == "a");
    CHECK(f.poly == RatPolynomial{-2, 0, 1});
    CHECK(parse_field(json::parse(R"({"poly": ["-2", "0", "1"]})")).poly == RatPolynomial{-2, 0, 1});
    CHECK_THROWS_WITH(parse_field(json::parse(R"({"poly": [-2, 0, 1], "extra": 1})")), doctest::Contains("unknown field"));
    CHECK_THROWS_WITH(parse_field(json::parse(R"({"poly": [-2, 0, 2]})")), doctest::Contains("monic"));
    CHECK_THROWS_WITH(parse_field(json::parse(R"({"poly": ["1/2", 0, 1]})")), doctest::Contains("monic"));
    CHECK_THROWS(parse_field(json::parse(R"({"poly": [1.5, 1]})")));
    CHECK_THROWS(parse_field(json::parse(R"([1, 2])")));
    CHECK(load_field_file(kFields + "/q_zeta7_plus.json").poly == RatPolynomial{-1, -2, 1, 1});

    TempDir t;
    auto p = t.write("nolabel.json", R"({"poly": [-3, 0, 1]})");
    CHECK(load_field_file(p).label == "nolabel");
    CHECK_THROWS_WITH(load_field_file(t.write("bad.json", "{")), doctest::Contains("bad.json"));
}

TEST_CASE("real cyclotomic polynomials are recognized")
{
    CHECK(match_real_cyclotomic(RatPolynomial{-1, -2, 1, 1}) == 7UL);
    CHECK(match_real_cyclotomic(RatPolynomial{1, -3, 0, 1}) == 9UL);
    CHECK(match_real_cyclotomic(real_cyclotomic_polynomial(13)) == 13UL);
    CHECK(match_real_cyclotomic(real_cyclotomic_polynomial(20)) == 20UL);
    CHECK_FALSE(match_real_cyclotomic(RatPolynomial{-148, 0, 100, 0, -20, 0, 1}));
    CHECK(match_real_cyclotomic(RatPolynomial{-2, 0, 1}) == 8UL);
    CHECK_FALSE(match_real_cyclotomic(RatPolynomial{-5, 0, 1}));
}

TEST_CASE("verify picks units by field shape")
{
    VerifyConfig cfg;
    cfg.p = 3;
    auto a = run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg);
    CHECK(a.status == LeopoldtStatus::verified);
    CHECK(a.unit_method == "quadratic");
    CHECK(a.label == "Q(sqrt2)");
    auto b = run_verify(load_field_file(kFields + "/q_zeta7_plus.json"), cfg);
    CHECK(b.status == LeopoldtStatus::verified);
    CHECK(b.unit_method == "cyclotomic");
    auto c = run_verify(load_field_file(kFields + "/sextic_s3.json"), cfg);
    CHECK(c.status == LeopoldtStatus::verified);
    CHECK(c.unit_method == "relation");

    // x^2 - 8 is Q(sqrt 2) again.
    auto d = run_verify({"eight", RatPolynomial{-8, 0, 1}}, cfg);
    CHECK(d.status == LeopoldtStatus::verified);

    auto imag = run_verify({"imag", RatPolynomial{1, 0, 1}}, cfg);
    CHECK(imag.status == LeopoldtStatus::error);
    CHECK(imag.message.find("totally real") != std::string::npos);
    auto red = run_verify({"red", RatPolynomial{-2, 0, 1} * RatPolynomial{-3, 0, 1}}, cfg);
    CHECK(red.status == LeopoldtStatus::error);
    CHECK(red.message.find("reducible") != std::string::npos);
    VerifyConfig bad = cfg;
    bad.p = 9;
    CHECK(run_verify(load_field_file(kFields + "/q_sqrt5.json"), bad).status == LeopoldtStatus::error);

    VerifyConfig capped = cfg;
    capped.start_precision = 1;
    capped.max_precision = 1;
    CHECK(run_verify(load_field_file(kFields + "/q_sqrt2.json"), capped).status == LeopoldtStatus::undetermined);
}

TEST_CASE("units files")
{
    TempDir t;
    VerifyConfig cfg;
    cfg.p = 7;
    cfg.units_file = t.write("u.json", R"([[{"coords": [1, 1], "exp": 1}]])");
    auto ok = run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg);
    CHECK(ok.status == LeopoldtStatus::verified);
    CHECK(ok.unit_method == "supplied");

    // (1 + sqrt2)^2 (1 + sqrt2)^-1 as a factored unit, exponent as a string.
    cfg.units_file = t.write("u2.json", R"([[{"coords": [3, 2], "exp": "1"}, {"coords": [1, 1], "exp": -1}]])");
    CHECK(run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg).status == LeopoldtStatus::verified);

    cfg.units_file = t.write("bad.json", R"([[{"coords": [3], "exp": 1}]])");
    auto bad = run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg);
    CHECK(bad.status == LeopoldtStatus::error);
    CHECK(bad.message.find("not a unit") != std::string::npos);
    CHECK(bad.unit_method == "supplied");

    cfg.units_file = t.write("extra.json", R"([[{"coords": [1, 1], "power": 1}]])");
    CHECK(run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg).message.find("unknown field") != std::string::npos);
    cfg.units_file = t.write("long.json", R"([[{"coords": [1, 1, 1]}]])");
    CHECK(run_verify(load_field_file(kFields + "/q_sqrt2.json"), cfg).status == LeopoldtStatus::error);
}

TEST_CASE("certificate records")
{
    VerifyConfig cfg;
    cfg.p = 7;
    cfg.seed = 42;
    auto c = run_verify(load_field_file(kFields + "/q_zeta7_plus.json"), cfg);
    json j = certificate_json(c, 5);
    std::set<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.insert(k);
    CHECK(keys == std::set<std::string>{"label", "p", "status", "precision", "valuation", "units", "elapsed_ms"});
    CHECK(j["units"]["seed"] == 42);
    CHECK(j["status"] == "verified");
    auto again = certificate_json(run_verify(load_field_file(kFields + "/q_zeta7_plus.json"), cfg), 900);
    CHECK(without_elapsed(j).dump() == without_elapsed(again).dump());

    LeopoldtCertificate e;
    e.label = "x";
    e.message = "boom";
    json je = certificate_json(e, 0);
    CHECK(je["status"] == "error");
    CHECK(je["message"] == "boom");
    CHECK(je["valuation"].is_null());

    CHECK(exit_code(LeopoldtStatus::verified) == 0);
    CHECK(exit_code(LeopoldtStatus::undetermined) == 2);
    CHECK(exit_code(LeopoldtStatus::error) == 1);
}

TEST_CASE("sextic relation search is reproducible")
{
    VerifyConfig cfg;
    cfg.p = 3;
    cfg.seed = 7;
    auto a = certificate_json(run_verify(load_field_file(kFields + "/sextic_s3.json"), cfg), 0);
    auto b = certificate_json(run_verify(load_field_file(kFields + "/sextic_s3.json"), cfg), 0);
    CHECK(a.dump() == b.dump());
    CHECK(a["status"] == "verified");
}

TEST_CASE("stark and character records")
{
    auto r = check_colmez_quadratic(5, 11);
    json j = stark_report_json(r);
    CHECK(j["archimedean"] == "pass");
    CHECK(j["padic"] == "pass");
    CHECK(j["certified_digits"].get<long>() >= 6);
    CHECK(exit_code(r) == 0);
    StarkReport skipped = r;
    skipped.padic = Verdict::skipped;
    CHECK(exit_code(skipped) == 2);
    StarkReport failed = r;
    failed.archimedean = Verdict::fail;
    CHECK(exit_code(failed) == 1);

    auto t = group_table("S3");
    json tj = group_table_json(t);
    CHECK(tj["order"] == 6);
    CHECK(tj["classes"].size() == 3);
    CHECK(tj["characters"].size() == 3);
    json aj = artin_json(t, 2, artin_induction_solve(t, t.characters[2]));
    CHECK(aj["n_rho"] == 1);
    CHECK(aj["terms"].size() == 2);
    json pj = perm_rc_json(t, perm_equals_rc(t));
    CHECK(pj["holds"] == true);
    CHECK(pj["witnesses"].size() == 3);
    json nj = perm_rc_json(group_table("C:3"), perm_equals_rc(group_table("C:3")));
    CHECK(nj["holds"] == false);
    CHECK(nj.contains("reason"));
}

TEST_CASE("batch runs and resumes")
{
    TempDir dir, outdir;
    for (const char* name : {"q_sqrt2.json", "q_sqrt5.json", "q_zeta7_plus.json"}) fs::copy_file(kFields + "/" + name, dir.path / name);
    dir.write("broken.json", R"({"poly": [1, 0, 2]})");
    BatchConfig cfg;
    cfg.dir = dir.path.string();
    cfg.verify.p = 7;
    cfg.workers = 3;
    cfg.out = (outdir.path / "certs.jsonl").string();
    auto s = run_batch(cfg);
    CHECK(s.fields == 4);
    CHECK(s.verified == 3);
    CHECK(s.errors == 1);
    CHECK(s.exit_code() == 1);
    auto lines = read_lines(*cfg.out);
    REQUIRE(lines.size() == 4);
    // Input order: sorted file names.
    CHECK(json::parse(lines[0])["label"] == "broken");
    CHECK(json::parse(lines[1])["label"] == "Q(sqrt2)");

    cfg.resume = true;
    auto again = run_batch(cfg);
    CHECK(again.skipped == 4);
    CHECK(read_lines(*cfg.out).size() == 4);

    // Drop the last record; resuming redoes only that field.
    {
        std::ofstream o(*cfg.out, std::ios::trunc);
        for (std::size_t i = 0; i + 1 < lines.size(); ++i) o << lines[i] << '\n';
    }
    auto third = run_batch(cfg);
    CHECK(third.skipped == 3);
    CHECK(third.verified == 1);
    auto final_lines = read_lines(*cfg.out);
    REQUIRE(final_lines.size() == 4);
    CHECK(without_elapsed(json::parse(final_lines[3])).dump() == without_elapsed(json::parse(lines[3])).dump());

    BatchConfig nores = cfg;
    nores.out.reset();
    CHECK_THROWS_WITH(run_batch(nores), doctest::Contains("--resume"));
    nores.resume = false;
    nores.dir = (dir.path / "missing").string();
    CHECK_THROWS(run_batch(nores));
}

TEST_CASE("worker count from the environment")
{
    ::setenv("LEOSTARK_WORKERS", "3", 1);
    CHECK(default_workers() == 3);
    ::setenv("LEOSTARK_WORKERS", "zero", 1);
    CHECK(default_workers() >= 1);
    ::unsetenv("LEOSTARK_WORKERS");
    CHECK(default_workers() >= 1);
}
