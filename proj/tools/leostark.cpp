#include "leo/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace leo;
using namespace leo::cli;

namespace {

// JSONL records go to --out (appended) or stdout.
void emit(const std::string& out, const json& j)
{
    if (out.empty()) {
        std::cout << j.dump() << '\n';
        return;
    }
    std::ofstream f(out, std::ios::app);
    if (!f) throw Error("cannot write " + out);
    f << j.dump() << '\n';
}

void check_prime(unsigned long p)
{
    if (!is_prime(p)) throw Error("--prime must be a prime");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Leopoldt certificates, abelian Stark checks and character tables"};
    app.require_subcommand(1);
    int code = kOk;

    // leo verify / leo batch
    auto* leo_cmd = app.add_subcommand("leo", "Leopoldt verification");
    leo_cmd->require_subcommand(1);

    std::string poly_file, units_file, out;
    VerifyConfig vcfg;
    auto* verify = leo_cmd->add_subcommand("verify", "certify one field");
    verify->add_option("--poly-file", poly_file, "field JSON {\"label\", \"poly\"}")->required()->check(CLI::ExistingFile);
    verify->add_option("--prime", vcfg.p, "the prime p")->required();
    verify->add_option("--max-prec", vcfg.max_precision, "precision cap (default 10 n ceil(log_p 1000))");
    verify->add_option("--start-prec", vcfg.start_precision, "first precision tried")->capture_default_str();
    verify->add_option("--units-file", units_file, "units JSON; searched for when absent")->check(CLI::ExistingFile);
    verify->add_option("--seed", vcfg.seed, "seed for the unit search")->capture_default_str();
    verify->add_option("--out", out, "append the certificate to this JSONL file");
    verify->callback([&] {
        check_prime(vcfg.p);
        if (!units_file.empty()) vcfg.units_file = units_file;
        const auto t0 = std::chrono::steady_clock::now();
        const LeopoldtCertificate cert = run_verify(load_field_file(poly_file), vcfg);
        const long ms = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
        emit(out, certificate_json(cert, ms));
        std::cerr << cert.label << " p=" << cert.p << ": " << to_string(cert.status) << " (M=" << cert.precision;
        if (cert.valuation) std::cerr << ", valuation " << *cert.valuation;
        std::cerr << ", units " << cert.unit_method << ")";
        if (!cert.message.empty()) std::cerr << ": " << cert.message;
        std::cerr << '\n';
        code = exit_code(cert.status);
    });

    BatchConfig bcfg;
    bcfg.workers = default_workers();
    std::string batch_out;
    auto* batch = leo_cmd->add_subcommand("batch", "certify every *.json field in a directory");
    batch->add_option("--dir", bcfg.dir, "directory of field files")->required()->check(CLI::ExistingDirectory);
    batch->add_option("--prime", bcfg.verify.p, "the prime p")->required();
    batch->add_option("--workers", bcfg.workers, "worker threads (default LEOSTARK_WORKERS or all cores)");
    batch->add_option("--max-prec", bcfg.verify.max_precision, "precision cap");
    batch->add_option("--start-prec", bcfg.verify.start_precision, "first precision tried")->capture_default_str();
    batch->add_option("--seed", bcfg.verify.seed, "seed for unit searches")->capture_default_str();
    batch->add_option("--out", batch_out, "JSONL output (stdout when absent)");
    batch->add_flag("--resume", bcfg.resume, "skip labels already in --out");
    batch->callback([&] {
        check_prime(bcfg.verify.p);
        if (!batch_out.empty()) bcfg.out = batch_out;
        const BatchSummary s = run_batch(bcfg);
        std::cerr << s.fields << " fields: " << s.verified << " verified, " << s.undetermined << " undetermined, "
                  << s.errors << " errors, " << s.skipped << " already done\n";
        code = s.exit_code();
    });

    // stark abelian / stark colmez
    auto* stark = app.add_subcommand("stark", "abelian Stark identities and the Colmez formula");
    stark->require_subcommand(1);

    unsigned long modulus = 0, prime = 0;
    std::size_t char_index = 0;
    StarkOptions sopts;
    std::string stark_out;
    auto* abelian = stark->add_subcommand("abelian", "xi identity for one even primitive character");
    abelian->add_option("--modulus", modulus, "conductor n")->required();
    abelian->add_option("--char-index", char_index, "index in the enumeration of characters mod n")->required();
    abelian->add_option("--prime", prime, "the prime p")->required();
    abelian->add_option("--prec", sopts.precision, "p-adic precision M")->capture_default_str();
    abelian->add_option("--real-bits", sopts.real_bits, "bits for the archimedean side")->capture_default_str();
    abelian->add_option("--out", stark_out, "append the report to this JSONL file");
    abelian->callback([&] {
        check_prime(prime);
        const auto chars = enumerate_characters(modulus);
        if (char_index >= chars.size()) throw Error("--char-index out of range (" + std::to_string(chars.size()) + " characters)");
        const StarkReport r = check_stark_abelian(chars[char_index], prime, sopts);
        emit(stark_out, stark_report_json(r));
        std::cerr << r.descriptor << " p=" << r.p << ": archimedean " << to_string(r.archimedean) << ", p-adic "
                  << to_string(r.padic) << '\n';
        code = exit_code(r);
    });

    long disc = 0;
    ColmezOptions copts;
    auto* colmez = stark->add_subcommand("colmez", "p-adic class number formula for a real quadratic field");
    colmez->add_option("--disc", disc, "fundamental discriminant or squarefree d > 1")->required();
    colmez->add_option("--prime", prime, "the prime p")->required();
    colmez->add_option("--prec", copts.precision, "p-adic precision M")->capture_default_str();
    colmez->add_option("--real-bits", copts.real_bits, "bits for the archimedean side")->capture_default_str();
    colmez->add_option("--out", stark_out, "append the report to this JSONL file");
    colmez->callback([&] {
        check_prime(prime);
        const StarkReport r = check_colmez_quadratic(disc, prime, copts);
        emit(stark_out, stark_report_json(r));
        std::cerr << r.descriptor << " p=" << r.p << ": archimedean " << to_string(r.archimedean) << ", p-adic "
                  << to_string(r.padic) << '\n';
        code = exit_code(r);
    });

    // chars table / artin / perm-eq-rc
    auto* chars = app.add_subcommand("chars", "character tables and Artin induction");
    chars->require_subcommand(1);
    std::string group;
    std::size_t character = 0;
    auto* table = chars->add_subcommand("table", "print a character table");
    table->add_option("--group", group, "group tag, e.g. S4, D:12, Aff:5, C3^2:C2, S3xC:2")->required();
    table->callback([&] { std::cout << group_table_json(group_table(group)).dump(2) << '\n'; });

    auto* artin = chars->add_subcommand("artin", "decompose a rational character into permutation characters");
    artin->add_option("--group", group, "group tag")->required();
    artin->add_option("--char", character, "character index in the table")->required();
    artin->callback([&] {
        const GroupTable t = group_table(group);
        if (character >= t.characters.size()) throw Error("--char out of range");
        std::cout << artin_json(t, character, artin_induction_solve(t, t.characters[character])).dump(2) << '\n';
    });

    auto* perm = chars->add_subcommand("perm-eq-rc", "decide Perm(G) = R_C(G)");
    perm->add_option("--group", group, "group tag")->required();
    perm->callback([&] {
        const GroupTable t = group_table(group);
        std::cout << perm_rc_json(t, perm_equals_rc(t)).dump(2) << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return code;
}
