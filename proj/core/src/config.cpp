// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmhbf/config.hpp"

#include "mmhbf/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace mmhbf {

using nlohmann::json;

namespace {

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where) {
    for (const auto &[key, value] : obj.items())
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T> void read_into(const json &obj, const char *key, T &dst) {
    if (!obj.contains(key))
        return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

void read_count(const json &obj, const char *key, std::size_t &dst) {
    if (!obj.contains(key))
        return;
    const json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
    dst = v.get<std::size_t>();
}

void read_array(const json &obj, const char *key, UraConfig &cfg) {
    if (!obj.contains(key))
        return;
    const json &a = obj.at(key);
    if (!a.is_object())
        throw ConfigError(std::string("'") + key + "' must be an object");
    reject_unknown(a, {"rows", "cols", "polarizations", "spacing_azimuth", "spacing_elevation", "element_gain_max_dbi"},
                   key);
    read_count(a, "rows", cfg.rows);
    read_count(a, "cols", cfg.cols);
    read_count(a, "polarizations", cfg.polarizations);
    read_into(a, "spacing_azimuth", cfg.spacing_azimuth);
    read_into(a, "spacing_elevation", cfg.spacing_elevation);
    read_into(a, "element_gain_max_dbi", cfg.element_gain_max);
}

json array_json(const UraConfig &c) {
    return {{"rows", c.rows},
            {"cols", c.cols},
            {"polarizations", c.polarizations},
            {"spacing_azimuth", c.spacing_azimuth},
            {"spacing_elevation", c.spacing_elevation},
            {"element_gain_max_dbi", c.element_gain_max}};
}

} // namespace

void CampaignConfig::set_schemes(const std::string &list) {
    if (list == "all") {
        schemes = {Scheme::Baseline, Scheme::Lsp, Scheme::Slnr, Scheme::Gmr};
        schemes_explicit = false;
        return;
    }
    schemes = parse_scheme_list(list);
    schemes_explicit = true;
}

std::vector<Scheme> CampaignConfig::active_schemes() const {
    std::vector<Scheme> out = schemes;
    if (!schemes_explicit && streams_per_user != ue_rf_chains)
        std::erase(out, Scheme::Gmr);
    return out;
}

SectorLayout CampaignConfig::layout() const {
    SectorLayout l;
    l.cell_radius = cell_radius;
    l.min_distance = min_distance;
    l.tp_height = tp_height;
    l.ue_height = ue_height;
    return l;
}

void CampaignConfig::validate() const {
    if (!(budget.carrier_ghz > 0.0) || !(budget.bandwidth_hz > 0.0))
        throw ConfigError("carrier frequency and bandwidth must be positive");
    layout().validate();
    if (users_per_cell == 0)
        throw ConfigError("users_per_cell must be at least 1");
    if (tp_rf_chains == 0 || ue_rf_chains == 0)
        throw ConfigError("RF chain counts must be at least 1");
    if (streams_per_user == 0 || streams_per_user > std::min(tp_rf_chains, ue_rf_chains))
        throw ConfigError("streams_per_user must lie in [1, min(tp_rf_chains, ue_rf_chains)]");
    tp_array.validate();
    ue_array.validate();
    if (ue_rf_chains > ue_array.element_count() || tp_rf_chains > tp_array.element_count())
        throw ConfigError("more RF chains than antenna elements");
    if (realizations == 0)
        throw ConfigError("realizations must be at least 1");
    ChannelProfile::by_name(channel_profile).validate();
    if (schemes.empty())
        throw ConfigError("scheme list is empty");
    if (std::find(schemes.begin(), schemes.end(), Scheme::Gmr) != schemes.end() && schemes_explicit &&
        streams_per_user != ue_rf_chains)
        throw ConfigError("gmr requires streams_per_user == ue_rf_chains (got " + std::to_string(streams_per_user) +
                          " streams, " + std::to_string(ue_rf_chains) + " UE RF chains)");
}

CampaignConfig parse_config(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config root must be an object");
    reject_unknown(j,
                   {"carrier_ghz", "bandwidth_hz", "tx_power_dbm", "noise_figure_db", "cell_radius_m", "min_distance_m",
                    "tp_height_m", "ue_height_m", "users_per_cell", "streams_per_user", "tp_rf_chains", "ue_rf_chains",
                    "tp_array", "ue_array", "channel_profile", "schemes", "realizations", "seed", "workers"},
                   "config");

    CampaignConfig c;
    read_into(j, "carrier_ghz", c.budget.carrier_ghz);
    read_into(j, "bandwidth_hz", c.budget.bandwidth_hz);
    read_into(j, "tx_power_dbm", c.budget.tx_power_dbm);
    read_into(j, "noise_figure_db", c.budget.noise_figure_db);
    read_into(j, "cell_radius_m", c.cell_radius);
    read_into(j, "min_distance_m", c.min_distance);
    read_into(j, "tp_height_m", c.tp_height);
    read_into(j, "ue_height_m", c.ue_height);
    read_count(j, "users_per_cell", c.users_per_cell);
    read_count(j, "streams_per_user", c.streams_per_user);
    read_count(j, "tp_rf_chains", c.tp_rf_chains);
    read_count(j, "ue_rf_chains", c.ue_rf_chains);
    read_array(j, "tp_array", c.tp_array);
    read_array(j, "ue_array", c.ue_array);
    read_into(j, "channel_profile", c.channel_profile);
    if (j.contains("schemes")) {
        const json &s = j.at("schemes");
        if (s.is_string()) {
            c.set_schemes(s.get<std::string>());
        } else if (s.is_array()) {
            std::string joined;
            for (const auto &x : s) {
                if (!x.is_string())
                    throw ConfigError("'schemes' entries must be strings");
                joined += (joined.empty() ? "" : ",") + x.get<std::string>();
            }
            c.set_schemes(joined);
        } else {
            throw ConfigError("'schemes' must be a string or an array of strings");
        }
    }
    read_count(j, "realizations", c.realizations);
    if (j.contains("seed")) {
        const json &s = j.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
            throw ConfigError("'seed' must be a nonnegative integer");
        c.seed = s.get<std::uint64_t>();
    }
    read_count(j, "workers", c.workers);
    return c;
}

CampaignConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const CampaignConfig &c) {
    json schemes = json::array();
    for (const Scheme s : c.schemes)
        schemes.push_back(std::string(to_string(s)));
    json j = {{"carrier_ghz", c.budget.carrier_ghz},
              {"bandwidth_hz", c.budget.bandwidth_hz},
              {"tx_power_dbm", c.budget.tx_power_dbm},
              {"noise_figure_db", c.budget.noise_figure_db},
              {"cell_radius_m", c.cell_radius},
              {"min_distance_m", c.min_distance},
              {"tp_height_m", c.tp_height},
              {"ue_height_m", c.ue_height},
              {"users_per_cell", c.users_per_cell},
              {"streams_per_user", c.streams_per_user},
              {"tp_rf_chains", c.tp_rf_chains},
              {"ue_rf_chains", c.ue_rf_chains},
              {"tp_array", array_json(c.tp_array)},
              {"ue_array", array_json(c.ue_array)},
              {"channel_profile", c.channel_profile},
              {"schemes", c.schemes_explicit ? schemes : json("all")},
              {"realizations", c.realizations},
              {"seed", c.seed}};
    return j.dump(2);
}

} // namespace mmhbf
