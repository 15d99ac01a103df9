#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "gapcert/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli_process(const std::string &args) {
    const char *cli = std::getenv("GAPCERT_CLI");
    if (!cli) {
        ADD_FAILURE() << "GAPCERT_CLI not set";
        return {};
    }
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *p = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool has_type(const json &v, const std::string &type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    if (type == "null") return v.is_null();
    return false;
}

// Checks the subset of JSON Schema used by the shipped schema: type, required, properties, items, enum.
void validate(const json &v, const json &schema, const std::string &path) {
    if (schema.contains("type")) {
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const auto &t : schema["type"]) {
                ok = ok || has_type(v, t.get<std::string>());
            }
        } else {
            ok = has_type(v, schema["type"].get<std::string>());
        }
        EXPECT_TRUE(ok) << path;
        if (!ok) return;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto &e : schema["enum"]) {
            found = found || e == v;
        }
        EXPECT_TRUE(found) << path;
    }
    if (v.is_object()) {
        for (const auto &k : schema.value("required", json::array())) {
            EXPECT_TRUE(v.contains(k.get<std::string>())) << path << "." << k;
        }
        const json props = schema.value("properties", json::object());
        for (const auto &[k, sub] : props.items()) {
            if (v.contains(k)) {
                validate(v[k], sub, path + "." + k);
            }
        }
    }
    if (v.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            validate(v[i], schema["items"], path + "[" + std::to_string(i) + "]");
        }
    }
}

json schema() {
    std::ifstream f(GAPCERT_SCHEMA_PATH);
    return json::parse(f);
}

}  // namespace

TEST(Cli, VerifyTablesReportsOnlyKnownMismatches) {
    CliRun r = run_cli_process("verify-tables");
    EXPECT_EQ(r.code, gapcert::kExitTableMismatch);
    json j = json::parse(r.out);
    EXPECT_FALSE(j["passed"].get<bool>());
    std::set<std::string> failed;
    for (const auto &i : j["items"]) {
        if (!i["passed"].get<bool>()) {
            failed.insert(i["table"].get<std::string>() + " " + i["key"].get<std::string>());
        }
    }
    std::set<std::string> expected = {
        "weingarten_numerator t=5 c=32",      "weingarten_numerator t=5 c=2111",
        "weingarten_numerator t=6 c=6",       "weingarten_numerator t=6 c=222",
        "denominator_at_inverse_t_squared t=4", "denominator_at_inverse_t_squared t=6",
    };
    EXPECT_EQ(failed, expected);
    for (const auto &d : j["diagnostics"]) {
        EXPECT_TRUE(d["passed"].get<bool>()) << d["key"];
    }
}

TEST(Cli, PublishedNumeratorsViolateTheSumRuleOnlyWhereTheyDiffer) {
    EXPECT_TRUE(gapcert::numerator_sum_rule(3, gapcert::published_numerators(3)));
    EXPECT_TRUE(gapcert::numerator_sum_rule(4, gapcert::published_numerators(4)));
    EXPECT_FALSE(gapcert::numerator_sum_rule(5, gapcert::published_numerators(5)));
    EXPECT_FALSE(gapcert::numerator_sum_rule(6, gapcert::published_numerators(6)));
}

TEST(Cli, WeingartenDegreeTwoExact) {
    CliRun r = run_cli_process("wg --t 2 --d 2");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    std::set<std::string> values;
    for (const auto &v : j["values"]) {
        values.insert(v["class"].get<std::string>() + "=" + v["value"].get<std::string>());
    }
    EXPECT_EQ(values, (std::set<std::string>{"11=4/3", "2=-2/3"}));
    EXPECT_EQ(j["numerators"]["2"], "-z");
}

TEST(Cli, CertifyInfiniteChain) {
    CliRun r = run_cli_process("certify --N inf --q 4 --t 4 --m-max 8");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    validate(j, schema(), "$");
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["N"], "inf");
    EXPECT_NEAR(j["gap_lower"].get<double>(), 0.77168, 1e-5);
}

TEST(Cli, CertifyHeadlineInstanceIsDeterministic) {
    std::string args = "certify --N 100 --q 4 --t 4 --eps 1e-4 --m-max 8";
    CliRun a = run_cli_process(args);
    CliRun b = run_cli_process(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    json j = json::parse(a.out);
    validate(j, schema(), "$");
    EXPECT_NE(j["notes"].dump().find("3030"), std::string::npos);
    EXPECT_GT(j["depth"]["additive"].get<double>(), 1400.0);
    EXPECT_LT(j["depth"]["additive"].get<double>(), 1520.0);
}

TEST(Cli, CertifyUnsupportedRegime) {
    CliRun r = run_cli_process("certify --q 2 --t 7 --N 10");
    EXPECT_EQ(r.code, gapcert::kExitUnsupported);
    json j = json::parse(r.out);
    validate(j, schema(), "$");
    EXPECT_FALSE(j["valid"].get<bool>());
    EXPECT_NE(j["reason"].get<std::string>().find("no certificate"), std::string::npos);
}

TEST(Cli, BadArgumentsExitTwo) {
    EXPECT_EQ(run_cli_process("certify --q two").code, gapcert::kExitUnsupported);
    EXPECT_EQ(run_cli_process("wg --t 9 --d 3").code, gapcert::kExitUnsupported);
    EXPECT_EQ(run_cli_process("").code, gapcert::kExitUnsupported);
}

TEST(Cli, EmptyScanIsHeaderOnly) {
    CliRun r = run_cli_process("scan --kind gap --q-min 5 --q-max 4");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "q,N,gap_lower,gap_upper,difference,sev_ratio\n");
    CliRun c = run_cli_process("scan --kind coderanged --q 2 --t-min 4 --t-max 3");
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(c.out, "q,t,m,eigenvalue,residual,iterations,trivial,experimental\n");
}

TEST(Cli, GapScanRowsInOrder) {
    CliRun r = run_cli_process("scan --kind gap --q-min 2 --q-max 20");
    ASSERT_EQ(r.code, 0);
    std::size_t lines = 0;
    for (char ch : r.out) {
        lines += ch == '\n';
    }
    EXPECT_EQ(lines, 20u);
    EXPECT_EQ(r.out.rfind("q,N,", 0), 0u);
    EXPECT_NE(r.out.find("\n2,inf,"), std::string::npos);
}

TEST(Cli, CoderangedCsvThreadsDoNotChangeOutput) {
    CliRun a = run_cli_process("coderanged --q 2 --t 4 --m-max 3 --threads 1");
    CliRun b = run_cli_process("coderanged --q 2 --t 4 --m-max 3 --threads 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\n2,4,1,0.25"), std::string::npos);
}
