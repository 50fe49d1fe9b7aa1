#pragma once

#include <sstream>

#include "incgap/oracle.hpp"
#include "scratch_dir.hpp"

// A synthetic data directory in the raw-file schema: 60 countries over the
// pipeline years, the poorest 20 labelled Sub-Saharan Africa.
inline incgap::oracle::SyntheticSpec fixture_spec() {
    incgap::oracle::SyntheticSpec spec;
    spec.n_countries = 60;
    spec.years = {1980, 1990, 2000, 2010, 2019};
    spec.ln_a = {7.5, 3.0, 0.005, -0.01};
    spec.ln_ky = {0.6, 0.7, 0.0, -0.005};
    spec.alpha.linear = {0.35, 0.0, 0.001, 0.0};
    spec.alpha.hump = 0.3;
    spec.noise_sd = 0.02;
    spec.seed = 4;
    return spec;
}

inline void write_fixture(const ScratchDir& dir) {
    const auto synth = incgap::oracle::synth_panel(fixture_spec());
    std::ostringstream pwt;
    incgap::oracle::write_pwt(pwt, synth.observations);
    spit(dir / "pwt.csv", pwt.str());
    std::string regions = "countrycode,region\n";
    for (std::size_t i = 0; i < 60; ++i) {
        regions += incgap::oracle::synthetic_code(i) + "," +
                   (i < 20 ? "Sub-Saharan Africa" : (i < 40 ? "Latin America" : "Europe")) + "\n";
    }
    spit(dir / "regions.csv", regions);
    std::string oil = "countrycode,year,oil_rents_pct_gdp\n";
    for (int year : {1980, 1990, 2000, 2010, 2019}) {
        for (std::size_t i = 0; i < 60; ++i) {
            const double pct = i == 45 && year == 1990 ? 55.0 : 1.0;
            oil += incgap::oracle::synthetic_code(i) + "," + std::to_string(year) + "," + std::to_string(pct) + "\n";
        }
    }
    spit(dir / "oil.csv", oil);
}
