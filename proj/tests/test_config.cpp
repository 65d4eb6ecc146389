#include <gtest/gtest.h>

#include "mbl/config.hpp"
#include "mbl/errors.hpp"
#include "oracles.hpp"

using namespace mbl;

namespace {

std::string error_of(std::string_view text) {
    try {
        parse_run_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(RunConfig, DefaultsForEmptyDocument) {
    const RunConfig c = parse_run_config("{}");
    EXPECT_EQ(c.job, JobType::steady);
    EXPECT_EQ(c.params, SystemParams{});
    EXPECT_EQ(c.output_format, OutputFormat::csv);
    EXPECT_TRUE(c.output_path.empty());
    EXPECT_FALSE(c.sweep.has_value());
}

TEST(RunConfig, ConvenienceKeysAndOverrides) {
    const RunConfig c = parse_run_config(R"({
        "job": "analytic",
        "params": {"delta": 9.8, "delta_s": 1.5, "kappa": 0.15, "g_ms": 19.6,
                   "omega_s": 0.06, "omega_d": 0.01},
        "gamma_mhz": 1.0
    })");
    EXPECT_EQ(c.job, JobType::analytic);
    EXPECT_EQ(c.params.delta_m, 9.8);
    EXPECT_EQ(c.params.delta_s, 1.5);
    EXPECT_EQ(c.params.kappa_m, 0.15);
    EXPECT_EQ(c.params.kappa_s, 0.15);
    EXPECT_EQ(c.gamma_mhz, 1.0);
}

TEST(RunConfig, SweepSection) {
    const RunConfig c = parse_run_config(R"({
        "job": "sweep",
        "params": {"g_ms": 19.6, "omega_s": 0.06, "omega_d": 0.01, "kappa": 0.15},
        "sweep": {
            "axis1": {"parameter": "delta", "min": -20, "max": 20, "count": 41},
            "axis2": {"parameter": "omega_d", "values": [0.004, 0.01]},
            "quantity": "both_g2"
        }
    })");
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->axis1, Axis::linear(Parameter::delta, -20, 20, 41));
    EXPECT_EQ(*c.sweep->axis2, Axis::list(Parameter::omega_d, {0.004, 0.01}));
    EXPECT_EQ(c.sweep->quantity, Quantity::both_g2);
    EXPECT_EQ(c.sweep->base, c.params);
}

TEST(RunConfig, RoundTripIsFieldByFieldIdentical) {
    oracle::Gen gen(1111);
    for (int t = 0; t < 50; ++t) {
        RunConfig c;
        c.job = static_cast<JobType>(gen.integer(0, 5));
        c.params.scenario = t % 2 ? Scenario::A : Scenario::B;
        c.params.delta_m = gen.uniform(-20, 20);
        c.params.delta_s = gen.uniform(-20, 20);
        c.params.g_ms = gen.uniform(0, 30);
        c.params.g_ms_tilde = gen.uniform(0, 60);
        c.params.omega_s = c.params.scenario == Scenario::A ? gen.uniform(0, 0.2) : 0.0;
        c.params.omega_d = gen.uniform(0, 0.05);
        c.params.kappa_m = gen.uniform(0.05, 1.5);
        c.params.kappa_s = gen.uniform(0.05, 1.5);
        c.params.n_th = gen.uniform(0, 1);
        c.params.fock_dim = gen.integer(2, 10);
        c.output_path = "out_" + std::to_string(t) + ".csv";
        c.output_format = t % 3 ? OutputFormat::csv : OutputFormat::json;
        if (t % 4 == 0) c.gamma_mhz = gen.uniform(0.5, 2);
        if (c.job == JobType::sweep || t % 5 == 0) {
            SweepSpec s;
            s.base = c.params;
            s.axis1 = Axis::linear(Parameter::delta, gen.uniform(-30, -1), gen.uniform(1, 30), gen.integer(2, 300));
            if (t % 2) s.axis2 = Axis::logarithmic(Parameter::omega_d, 1e-3, gen.uniform(0.01, 1), 7);
            else s.axis2 = Axis::list(Parameter::kappa, {gen.uniform(0.1, 1), gen.uniform(0.1, 1)});
            s.constraint = t % 3 ? Constraint::none : Constraint::delta_half_coupling;
            c.sweep = s;
        }
        c.evolve.t_end = gen.uniform(1, 2000);
        c.evolve.samples = gen.integer(2, 500);
        c.spectrum = {gen.uniform(-5, 5), gen.uniform(-5, 5), gen.integer(1, 6)};
        if (c.job == JobType::figure || t % 7 == 0) {
            c.figure = figure_names()[static_cast<std::size_t>(gen.integer(0, 11))];
            c.grid.axis1 = AxisOverride{std::nullopt, gen.uniform(1, 5), gen.integer(2, 50)};
        }
        const RunConfig back = parse_run_config(to_json(c));
        EXPECT_EQ(back, c) << to_json(c);
        EXPECT_EQ(to_json(back), to_json(c));
    }
}

TEST(RunConfig, UnknownKeysRejectedWithPath) {
    EXPECT_NE(error_of(R"({"jobb": "steady"})").find("jobb"), std::string::npos);
    EXPECT_NE(error_of(R"({"params": {"kapa": 1}})").find("params.kapa"), std::string::npos);
    EXPECT_NE(error_of(R"({"job":"sweep","sweep": {"axis1": {"parameter": "delta", "min": 0,
               "max": 1, "count": 3, "step": 2}}})").find("sweep.axis1.step"), std::string::npos);
    EXPECT_NE(error_of(R"({"output": {"file": "x"}})").find("output.file"), std::string::npos);
}

TEST(RunConfig, MalformedJsonReportsLineAndColumn) {
    const std::string msg = error_of("{\n  \"job\": \"steady\",\n  \"params\": {\n}");
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(RunConfig, ParameterInvariantsRevalidated) {
    EXPECT_NE(error_of(R"({"params": {"kappa_m": 0}})").find("kappa_m"), std::string::npos);
    EXPECT_NE(error_of(R"({"params": {"scenario": "B", "omega_s": 0.1}})").find("omega_s"), std::string::npos);
    EXPECT_NE(error_of(R"({"params": {"fock_dim": 1.5}})").find("params.fock_dim"), std::string::npos);
    EXPECT_NE(error_of(R"({"params": {"g_ms": "big"}})").find("params.g_ms"), std::string::npos);
    EXPECT_NE(error_of(R"({"params": {"scenario": "Q"}})").find("params.scenario"), std::string::npos);
}

TEST(RunConfig, JobSpecificRequirements) {
    EXPECT_FALSE(error_of(R"({"job": "sweep"})").empty());
    EXPECT_FALSE(error_of(R"({"job": "figure"})").empty());
    EXPECT_FALSE(error_of(R"({"job": "figure", "figure": "fig99"})").empty());
    EXPECT_FALSE(error_of(R"({"job": "dance"})").empty());
    EXPECT_FALSE(error_of(R"({"evolve": {"samples": 1}})").empty());
    EXPECT_FALSE(error_of(R"({"output": {"format": "xml"}})").empty());
    EXPECT_FALSE(error_of(R"({"gamma_mhz": -1})").empty());
    EXPECT_FALSE(error_of(R"({"job":"sweep","sweep": {"axis1": {"parameter": "delta", "values": [1],
                            "min": 0}}})").empty());
    EXPECT_FALSE(error_of(R"({"job":"sweep","sweep": {"axis1": {"parameter": "omega", "values": [1]}}})").empty());
}

TEST(ApplyOverrides, ChangesRangeAndRejectsLists) {
    const auto spec = std::get<SweepSpec>(figure_preset("fig3a"));
    GridOverrides o;
    o.axis1 = AxisOverride{-5.0, 5.0, 11};
    o.axis2 = AxisOverride{std::nullopt, std::nullopt, 3};
    const SweepSpec s = apply_overrides(spec, o);
    EXPECT_EQ(s.axis1, Axis::linear(Parameter::delta, -5, 5, 11));
    EXPECT_EQ(s.axis2->count, 3);
    EXPECT_EQ(s.axis2->max, 30.0);

    GridOverrides bad;
    bad.axis1 = AxisOverride{std::nullopt, std::nullopt, 1};
    EXPECT_THROW(apply_overrides(spec, bad), ConfigError);

    GridOverrides list;
    list.axis2 = AxisOverride{std::nullopt, std::nullopt, 5};
    EXPECT_THROW(apply_overrides(std::get<SweepSpec>(figure_preset("fig5a")), list), ConfigError);
}
