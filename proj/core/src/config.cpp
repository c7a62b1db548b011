// SPDX-License-Identifier: Apache-2.0
//
// mimo_as: analytical and Monte Carlo rate evaluation for multi-cell correlated MIMO
// Copyright (C) 2026 The mimo_as authors
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

#include "mimo_as/config.hpp"
#include "mimo_as/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mimo_as
{
    namespace
    {
        int line_of(const YAML::Node &n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

        void check_keys(const YAML::Node &map, const std::string &section, const std::set<std::string> &allowed)
        {
            if (!map.IsMap())
                throw ConfigError(section, line_of(map), "expected a mapping");
            for (const auto &kv : map)
            {
                const auto key = kv.first.as<std::string>();
                if (!allowed.contains(key))
                    throw ConfigError(section.empty() ? key : section + "." + key, line_of(kv.first), "unknown key");
            }
        }

        template <typename T>
        T scalar(const YAML::Node &n, const std::string &key)
        {
            if (!n.IsScalar())
                throw ConfigError(key, line_of(n), "expected a scalar");
            try
            {
                return n.as<T>();
            }
            catch (const YAML::Exception &)
            {
                throw ConfigError(key, line_of(n), "cannot read value '" + n.Scalar() + "'");
            }
        }

        std::size_t count(const YAML::Node &n, const std::string &key)
        {
            const auto v = scalar<long long>(n, key);
            if (v < 0)
                throw ConfigError(key, line_of(n), "must be non-negative");
            return static_cast<std::size_t>(v);
        }

        template <typename T, typename F>
        std::vector<T> list(const YAML::Node &n, const std::string &key, F each)
        {
            if (n.IsScalar())
                return {each(n)};
            if (!n.IsSequence())
                throw ConfigError(key, line_of(n), "expected a list");
            std::vector<T> out;
            for (const auto &item : n)
                out.push_back(each(item));
            return out;
        }

        // Line lookup for validation failures of already-parsed values.
        struct Lines
        {
            std::map<std::string, int> at;
            int operator()(const std::string &k) const
            {
                auto it = at.find(k);
                return it == at.end() ? 0 : it->second;
            }
        };

        void validate_impl(const ScenarioConfig &c, const Lines &ln)
        {
            auto fail = [&](const std::string &key, const std::string &what) { throw ConfigError(key, ln(key), what); };
            if (c.cells.empty())
                fail("scenario.cells", "required field missing or empty");
            if (c.cells.size() > max_cells)
                fail("scenario.cells", "at most " + std::to_string(max_cells) + " cells are supported");
            for (std::size_t i = 0; i < c.cells.size(); ++i)
                if (c.cells[i].cell_id != i)
                    fail("scenario.cells", "cell ids must be 0..N-1 in list order");
            if (!(c.r1 > 0.0))
                fail("scenario.r1", "must be > 0");
            if (!(c.r2 > c.r1))
                fail("scenario.r2", "must be > r1");
            if (!(c.gamma > 0.0))
                fail("scenario.gamma", "must be > 0");
            if (c.zeta && !(*c.zeta > 0.0))
                fail("scenario.zeta", "must be > 0 or 'auto'");
            if (!(c.sigma2 > 0.0))
                fail("scenario.sigma2", "must be > 0");
            if (c.tau < 1)
                fail("scenario.tau", "must be >= 1");
            if (c.n_paths < 1)
                fail("scenario.n_paths", "must be >= 1");
            if (!(c.spacing_ratio > 0.0))
                fail("scenario.spacing_ratio", "must be > 0");
            if (c.as_grid_deg.empty())
                fail("sweep.as_grid_deg", "must not be empty");
            for (std::size_t i = 0; i < c.as_grid_deg.size(); ++i)
            {
                const double a = c.as_grid_deg[i];
                if (!std::isfinite(a) || a > 180.0 || a < 0.0)
                    fail("sweep.as_grid_deg", "values must lie in (0, 180]");
                if (a == 0.0 && !c.allow_zero_spread)
                    fail("sweep.as_grid_deg", "0 deg requires sweep.allow_zero_spread: true");
                if (i > 0 && !(a > c.as_grid_deg[i - 1]))
                    fail("sweep.as_grid_deg", "values must be strictly increasing");
            }
            if (c.m_grid.empty())
                fail("sweep.m_grid", "must not be empty");
            for (auto m : c.m_grid)
                if (m < 1)
                    fail("sweep.m_grid", "array sizes must be >= 1");
            if (c.precoders.empty())
                fail("sweep.precoders", "must not be empty");
            if (c.engines.empty())
                fail("sweep.engines", "must not be empty");
            const bool mc = std::find(c.engines.begin(), c.engines.end(), Source::monte_carlo) != c.engines.end();
            if (mc && c.n_realizations < 1000)
                fail("monte_carlo.n_realizations", "must be >= 1000");
        }

        ScenarioConfig from_yaml(const YAML::Node &root)
        {
            ScenarioConfig c;
            Lines ln;
            if (!root.IsMap())
                throw ConfigError("", line_of(root), "top level must be a mapping");
            check_keys(root, "", {"scenario", "sweep", "monte_carlo"});
            const auto sc = root["scenario"];
            if (!sc)
                throw ConfigError("scenario", 0, "required section missing");
            check_keys(sc, "scenario",
                       {"cells", "r1", "r2", "gamma", "zeta", "sigma2", "tau", "n_paths", "spacing_ratio"});

            const auto cells = sc["cells"];
            if (!cells)
                throw ConfigError("scenario.cells", line_of(sc), "required field missing");
            ln.at["scenario.cells"] = line_of(cells);
            if (!cells.IsSequence())
                throw ConfigError("scenario.cells", line_of(cells), "expected a list");
            std::size_t idx = 0;
            for (const auto &cell : cells)
            {
                if (cell.IsScalar())
                    c.cells.emplace_back(idx, scalar<double>(cell, "scenario.cells"));
                else
                {
                    check_keys(cell, "scenario.cells", {"id", "angle_deg"});
                    if (!cell["angle_deg"])
                        throw ConfigError("scenario.cells.angle_deg", line_of(cell), "required field missing");
                    const std::size_t id = cell["id"] ? count(cell["id"], "scenario.cells.id") : idx;
                    c.cells.emplace_back(id, scalar<double>(cell["angle_deg"], "scenario.cells.angle_deg"));
                }
                ++idx;
            }

            auto real = [&](const YAML::Node &sec, const std::string &s, const char *k, double &dst)
            {
                if (const auto n = sec[k])
                {
                    ln.at[s + "." + k] = line_of(n);
                    dst = scalar<double>(n, s + "." + k);
                }
            };
            auto cnt = [&](const YAML::Node &sec, const std::string &s, const char *k, std::size_t &dst)
            {
                if (const auto n = sec[k])
                {
                    ln.at[s + "." + k] = line_of(n);
                    dst = count(n, s + "." + k);
                }
            };
            real(sc, "scenario", "r1", c.r1);
            real(sc, "scenario", "r2", c.r2);
            real(sc, "scenario", "gamma", c.gamma);
            real(sc, "scenario", "sigma2", c.sigma2);
            real(sc, "scenario", "spacing_ratio", c.spacing_ratio);
            cnt(sc, "scenario", "tau", c.tau);
            cnt(sc, "scenario", "n_paths", c.n_paths);
            if (const auto z = sc["zeta"])
            {
                ln.at["scenario.zeta"] = line_of(z);
                if (z.IsScalar() && z.Scalar() == "auto")
                    c.zeta.reset();
                else
                    c.zeta = scalar<double>(z, "scenario.zeta");
            }

            if (const auto sw = root["sweep"])
            {
                check_keys(sw, "sweep", {"as_grid_deg", "m_grid", "precoders", "engines", "allow_zero_spread"});
                if (const auto g = sw["as_grid_deg"])
                {
                    ln.at["sweep.as_grid_deg"] = line_of(g);
                    if (g.IsMap())
                    {
                        check_keys(g, "sweep.as_grid_deg", {"start", "stop", "step"});
                        for (const char *k : {"start", "stop", "step"})
                            if (!g[k])
                                throw ConfigError(std::string("sweep.as_grid_deg.") + k, line_of(g),
                                                  "required field missing");
                        const double a = scalar<double>(g["start"], "sweep.as_grid_deg.start");
                        const double b = scalar<double>(g["stop"], "sweep.as_grid_deg.stop");
                        const double s = scalar<double>(g["step"], "sweep.as_grid_deg.step");
                        if (!(s > 0.0) || b < a)
                            throw ConfigError("sweep.as_grid_deg", line_of(g), "need step > 0 and stop >= start");
                        c.as_grid_deg.clear();
                        const auto n = static_cast<std::size_t>(std::floor((b - a) / s + 1e-9));
                        for (std::size_t i = 0; i <= n; ++i)
                            c.as_grid_deg.push_back(a + s * static_cast<double>(i));
                    }
                    else
                        c.as_grid_deg = list<double>(g, "sweep.as_grid_deg",
                                                     [](const YAML::Node &n) { return scalar<double>(n, "sweep.as_grid_deg"); });
                }
                if (const auto g = sw["m_grid"])
                {
                    ln.at["sweep.m_grid"] = line_of(g);
                    c.m_grid = list<std::size_t>(g, "sweep.m_grid",
                                                 [](const YAML::Node &n) { return count(n, "sweep.m_grid"); });
                }
                if (const auto g = sw["precoders"])
                {
                    ln.at["sweep.precoders"] = line_of(g);
                    c.precoders = list<Precoder>(g, "sweep.precoders",
                                                 [](const YAML::Node &n)
                                                 {
                                                     try
                                                     {
                                                         return precoder_from_string(scalar<std::string>(n, "sweep.precoders"));
                                                     }
                                                     catch (const std::invalid_argument &e)
                                                     {
                                                         throw ConfigError("sweep.precoders", line_of(n), e.what());
                                                     }
                                                 });
                }
                if (const auto g = sw["engines"])
                {
                    ln.at["sweep.engines"] = line_of(g);
                    c.engines = list<Source>(g, "sweep.engines",
                                             [](const YAML::Node &n)
                                             {
                                                 try
                                                 {
                                                     return engine_from_string(scalar<std::string>(n, "sweep.engines"));
                                                 }
                                                 catch (const std::invalid_argument &e)
                                                 {
                                                     throw ConfigError("sweep.engines", line_of(n), e.what());
                                                 }
                                             });
                }
                if (const auto g = sw["allow_zero_spread"])
                    c.allow_zero_spread = scalar<bool>(g, "sweep.allow_zero_spread");
            }

            if (const auto mc = root["monte_carlo"])
            {
                check_keys(mc, "monte_carlo", {"n_realizations", "seed", "workers"});
                cnt(mc, "monte_carlo", "n_realizations", c.n_realizations);
                cnt(mc, "monte_carlo", "workers", c.workers);
                if (const auto s = mc["seed"])
                    c.seed = scalar<std::uint64_t>(s, "monte_carlo.seed");
            }
            validate_impl(c, ln);
            return c;
        }
    }

    std::vector<double> ScenarioConfig::default_as_grid()
    {
        std::vector<double> g;
        for (int a = 2; a <= 70; a += 2)
            g.push_back(a);
        return g;
    }

    double ScenarioConfig::zeta_value() const { return zeta ? *zeta : std::pow(r1, gamma); }

    void ScenarioConfig::validate() const { validate_impl(*this, Lines{}); }

    Source engine_from_string(const std::string &s)
    {
        std::string u = s;
        std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (u == "analytic")
            return Source::analytic;
        if (u == "mc" || u == "monte-carlo" || u == "monte_carlo" || u == "montecarlo")
            return Source::monte_carlo;
        throw std::invalid_argument("unknown engine '" + s + "'");
    }

    ScenarioConfig parse_config_string(const std::string &text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::ParserException &e)
        {
            throw ConfigError("", e.mark.line + 1, e.msg);
        }
        return from_yaml(root);
    }

    ScenarioConfig parse_config(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw ConfigError("", 0, "cannot open " + path.string());
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_config_string(ss.str());
    }

    std::string to_yaml(const ScenarioConfig &c)
    {
        std::ostringstream os;
        os.precision(17);
        os << "scenario:\n  cells:\n";
        for (const auto &cell : c.cells)
            os << "    - {id: " << cell.cell_id << ", angle_deg: " << cell.ue_angle_deg << "}\n";
        os << "  r1: " << c.r1 << "\n  r2: " << c.r2 << "\n  gamma: " << c.gamma << "\n  zeta: ";
        if (c.zeta)
            os << *c.zeta;
        else
            os << "auto";
        os << "\n  sigma2: " << c.sigma2 << "\n  tau: " << c.tau << "\n  n_paths: " << c.n_paths
           << "\n  spacing_ratio: " << c.spacing_ratio << "\nsweep:\n  as_grid_deg: [";
        for (std::size_t i = 0; i < c.as_grid_deg.size(); ++i)
            os << (i ? ", " : "") << c.as_grid_deg[i];
        os << "]\n  m_grid: [";
        for (std::size_t i = 0; i < c.m_grid.size(); ++i)
            os << (i ? ", " : "") << c.m_grid[i];
        os << "]\n  precoders: [";
        for (std::size_t i = 0; i < c.precoders.size(); ++i)
            os << (i ? ", " : "") << to_string(c.precoders[i]);
        os << "]\n  engines: [";
        for (std::size_t i = 0; i < c.engines.size(); ++i)
            os << (i ? ", " : "") << to_string(c.engines[i]);
        os << "]\n  allow_zero_spread: " << (c.allow_zero_spread ? "true" : "false") << "\nmonte_carlo:\n  n_realizations: "
           << c.n_realizations << "\n  seed: " << c.seed << "\n  workers: " << c.workers << "\n";
        return os.str();
    }
}
