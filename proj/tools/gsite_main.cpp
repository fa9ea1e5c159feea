#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gsite/cli_app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"finite model of the site of discrete G-sets over a truncated profinite group"};
    app.require_subcommand(1);

    gsite::RunConfig cfg;
    std::string target, from, to, case_name = "1";

    auto add_common = [&](CLI::App* cmd, bool tower_required = true) {
        auto* t = cmd->add_option("--tower", cfg.tower_path, "tower spec file (JSON)");
        if (tower_required) t->required();
        cmd->add_option("--depth", cfg.depth_override, "truncate the tower to this depth");
        cmd->add_option("--seed", cfg.seed, "seed for generated instances");
        cmd->add_option("--format", cfg.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", cfg.out_path, "write the report to this path");
    };

    CLI::App* check = app.add_subcommand("check", "run the law-check suites");
    add_common(check);
    check->add_option("--suite", cfg.suite, "pretopology|stability|sheaf|witness|all")
        ->check(CLI::IsMember({"pretopology", "stability", "sheaf", "witness", "all"}));
    check->add_flag("--inject-fault", cfg.inject_stability_fault,
                    "self-test: feed the verifier a corrupted certificate (must exit 1)");

    CLI::App* witness = app.add_subcommand(
        "witness", "construct a sheaf-condition failure for a target object");
    add_common(witness);
    witness->add_option("--target", target,
                        "group | empty | trivial:N | coset:LEVEL:IDX | gset spec path")
        ->required();

    CLI::App* orbits = app.add_subcommand("orbits", "orbit decomposition of a G-set");
    add_common(orbits);
    orbits->add_option("--gset", target, "target descriptor or gset spec path")->required();

    CLI::App* homc = app.add_subcommand("hom", "enumerate morphisms between two objects");
    add_common(homc);
    homc->add_option("--from", from, "domain descriptor")->required();
    homc->add_option("--to", to, "codomain descriptor")->required();

    CLI::App* refine = app.add_subcommand("refine", "refine a seeded cover along a morphism");
    add_common(refine);
    refine->add_option("--case", case_name, "stability case: 1|2|3|4a|4b|5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        // CLI11 exits 0 for --help; anything else is an input error
        return code == 0 ? gsite::kExitOk : gsite::kExitInputError;
    }

    if (check->parsed()) return gsite::cmd_check(cfg, std::cout, std::cerr);
    if (witness->parsed()) return gsite::cmd_witness(cfg, target, std::cout, std::cerr);
    if (orbits->parsed()) return gsite::cmd_orbits(cfg, target, std::cout, std::cerr);
    if (homc->parsed()) return gsite::cmd_hom(cfg, from, to, std::cout, std::cerr);
    if (refine->parsed()) return gsite::cmd_refine(cfg, case_name, std::cout, std::cerr);
    return gsite::kExitInputError;
}
