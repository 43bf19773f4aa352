// The C interface: handles, status codes, error reporting.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <asylecon.h>

namespace {
const char* kDataDir = ASYLECON_DATA_DIR;
}

TEST_CASE("version and error strings are always available") {
    REQUIRE(asylecon_version() != nullptr);
    CHECK(std::string(asylecon_version()).find('.') != std::string::npos);
    REQUIRE(asylecon_last_error() != nullptr);
}

TEST_CASE("panel loading reports IO failures through status codes") {
    asylecon_panel* panel = nullptr;
    auto rc = asylecon_panel_load("/this/directory/does/not/exist", &panel);
    CHECK(rc == ASYLECON_E_IO);
    CHECK(panel == nullptr);
    CHECK(std::strlen(asylecon_last_error()) > 0);

    CHECK(asylecon_panel_load(kDataDir, nullptr) == ASYLECON_E_INVALID);
}

TEST_CASE("the bundled panel walks through the whole C surface") {
    asylecon_panel* panel = nullptr;
    REQUIRE(asylecon_panel_load(kDataDir, &panel) == ASYLECON_OK);
    REQUIRE(panel != nullptr);
    CHECK(asylecon_panel_country_count(panel) == 29);
    CHECK(asylecon_panel_excluded_count(panel) == 0);

    // Codes come back in sorted order and out-of-range indices are NULL.
    REQUIRE(asylecon_panel_country_code(panel, 0) != nullptr);
    CHECK(std::string(asylecon_panel_country_code(panel, 0)) == "AT");
    CHECK(asylecon_panel_country_code(panel, 29) == nullptr);
    CHECK(asylecon_panel_country_code(panel, -1) == nullptr);

    asylecon_config* config = nullptr;
    REQUIRE(asylecon_config_create(&config) == ASYLECON_OK);
    CHECK(asylecon_config_set(config, "seed", "42") == ASYLECON_OK);
    CHECK(asylecon_config_set(config, "bogus_key", "1") == ASYLECON_E_PARSE);
    CHECK(asylecon_config_set(config, "burn_in", "many") == ASYLECON_E_PARSE);

    const char* subset[] = {"IE", "CH"};
    asylecon_study* study = nullptr;
    REQUIRE(asylecon_study_run(panel, config, subset, 2, &study) == ASYLECON_OK);
    REQUIRE(study != nullptr);
    CHECK(asylecon_study_country_count(study) == 2);
    CHECK(asylecon_study_error_count(study) == 0);

    char* text = nullptr;
    REQUIRE(asylecon_study_json(study, &text) == ASYLECON_OK);
    REQUIRE(text != nullptr);
    CHECK(text[0] == '{');
    CHECK(std::string(text).find("\"countries\"") != std::string::npos);
    asylecon_string_free(text);

    char* fit = nullptr;
    REQUIRE(asylecon_fit_json(panel, config, "IE", "loglog", &fit) == ASYLECON_OK);
    REQUIRE(fit != nullptr);
    CHECK(std::string(fit).find("omega") != std::string::npos);
    asylecon_string_free(fit);

    // Unknown country and unknown model are invalid-argument failures.
    char* junk = nullptr;
    CHECK(asylecon_fit_json(panel, config, "ZZ", "loglog", &junk) == ASYLECON_E_INVALID);
    CHECK(asylecon_fit_json(panel, config, "IE", "cubist", &junk) == ASYLECON_E_PARSE);

    asylecon_study_free(study);
    asylecon_config_free(config);
    asylecon_panel_free(panel);
}

TEST_CASE("running a study with an unknown subset code fails cleanly") {
    asylecon_panel* panel = nullptr;
    REQUIRE(asylecon_panel_load(kDataDir, &panel) == ASYLECON_OK);
    asylecon_config* config = nullptr;
    REQUIRE(asylecon_config_create(&config) == ASYLECON_OK);

    const char* subset[] = {"ZZ"};
    asylecon_study* study = nullptr;
    CHECK(asylecon_study_run(panel, config, subset, 1, &study) == ASYLECON_E_INVALID);
    CHECK(study == nullptr);

    asylecon_config_free(config);
    asylecon_panel_free(panel);
}
