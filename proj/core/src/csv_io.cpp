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

#include "mimo_as/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mimo_as
{
    namespace
    {
        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream os(path, std::ios::binary | std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot open " + path.string() + " for writing");
            return os;
        }

        void close_out(std::ofstream &os, const std::filesystem::path &path)
        {
            os.close();
            if (!os)
                throw std::runtime_error("write failed for " + path.string());
        }

        std::vector<std::pair<std::string, std::string>> header_of(const SweepResult &res)
        {
            const auto &c = res.config;
            std::vector<std::pair<std::string, std::string>> h;
            auto join = [](const auto &v, auto fmt)
            {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i)
                    s += (i ? ";" : "") + fmt(v[i]);
                return s;
            };
            h.emplace_back("n_cells", std::to_string(c.cells.size()));
            h.emplace_back("ue_angles_deg", join(c.cells, [](const CellSpec &x) { return format_double(x.ue_angle_deg); }));
            h.emplace_back("r1", format_double(c.r1));
            h.emplace_back("r2", format_double(c.r2));
            h.emplace_back("gamma", format_double(c.gamma));
            h.emplace_back("zeta", format_double(c.zeta_value()));
            h.emplace_back("sigma2", format_double(c.sigma2));
            h.emplace_back("tau", std::to_string(c.tau));
            h.emplace_back("n_paths", std::to_string(c.n_paths));
            h.emplace_back("spacing_ratio", format_double(c.spacing_ratio));
            h.emplace_back("as_grid_deg", join(c.as_grid_deg, [](double x) { return format_double(x); }));
            h.emplace_back("m_grid", join(c.m_grid, [](std::size_t x) { return std::to_string(x); }));
            h.emplace_back("precoders", join(c.precoders, [](Precoder p) { return std::string(to_string(p)); }));
            h.emplace_back("engines", join(c.engines, [](Source s) { return std::string(to_string(s)); }));
            h.emplace_back("n_realizations", std::to_string(c.n_realizations));
            h.emplace_back("seed", std::to_string(c.seed));
            for (std::size_t i = 0; i < res.layout.n_cells(); ++i)
            {
                const auto &b = res.layout.bs_positions[i];
                const auto &u = res.layout.ue_positions[i];
                h.emplace_back("bs" + std::to_string(i) + "_xy", format_double(b.x) + ";" + format_double(b.y));
                h.emplace_back("ue" + std::to_string(i) + "_xy", format_double(u.x) + ";" + format_double(u.y));
            }
            return h;
        }

        void put_header(std::ostream &os, const std::vector<std::pair<std::string, std::string>> &h)
        {
            for (const auto &[k, v] : h)
                os << "# " << k << '=' << v << '\n';
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            std::istringstream is(s);
            while (std::getline(is, cur, sep))
                out.push_back(cur);
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        double to_double(const std::string &s, const std::filesystem::path &path, std::size_t line)
        {
            char *end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
            return v;
        }
    }

    std::string format_double(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        return buf;
    }

    SweepFiles emit_csv(const SweepResult &res, const std::filesystem::path &out_dir, const std::string &prefix)
    {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
        SweepFiles f{out_dir / (prefix + "rates.csv"), out_dir / (prefix + "powers.csv"),
                     out_dir / (prefix + "extrema.csv")};
        const auto header = header_of(res);

        {
            auto os = open_out(f.rates);
            put_header(os, header);
            os << "m,as_deg,precoder,engine,signal,self_interference,intercell,noise,rate_bps_hz,stderr_rate\n";
            for (const auto &r : res.rows)
            {
                const auto &p = r.powers;
                os << r.m << ',' << format_double(r.as_deg) << ',' << to_string(r.precoder) << ',' << to_string(r.engine)
                   << ',' << format_double(p.signal) << ',' << format_double(p.self_interference) << ','
                   << format_double(p.intercell) << ',' << format_double(p.noise) << ',' << format_double(p.rate_bps_hz)
                   << ',' << format_double(p.stderr_rate) << '\n';
            }
            close_out(os, f.rates);
        }
        {
            auto os = open_out(f.powers);
            put_header(os, header);
            os << "m,as_deg,precoder,engine,signal,stderr_signal,self_interference,stderr_self_interference,intercell,"
                  "stderr_intercell,noise\n";
            for (const auto &r : res.rows)
            {
                const auto &p = r.powers;
                os << r.m << ',' << format_double(r.as_deg) << ',' << to_string(r.precoder) << ',' << to_string(r.engine)
                   << ',' << format_double(p.signal) << ',' << format_double(p.stderr_signal) << ','
                   << format_double(p.self_interference) << ',' << format_double(p.stderr_self_interference) << ','
                   << format_double(p.intercell) << ',' << format_double(p.stderr_intercell) << ','
                   << format_double(p.noise) << '\n';
            }
            close_out(os, f.powers);
        }
        {
            auto os = open_out(f.extrema);
            put_header(os, header);
            os << "kind,as_deg,rate_bps_hz,m,precoder,engine\n";
            for (const auto &e : res.extrema)
                os << (e.kind == ExtremumKind::minimum ? "min" : "max") << ',' << format_double(e.as_deg) << ','
                   << format_double(e.rate) << ',' << e.m << ',' << to_string(e.precoder) << ',' << to_string(e.engine)
                   << '\n';
            close_out(os, f.extrema);
        }
        return f;
    }

    RatesTable read_rates_csv(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open " + path.string());
        RatesTable t;
        std::string line;
        std::size_t n = 0;
        bool columns = false;
        while (std::getline(is, line))
        {
            ++n;
            if (line.empty())
                continue;
            if (line.rfind("# ", 0) == 0)
            {
                const auto eq = line.find('=');
                if (eq != std::string::npos)
                    t.header[line.substr(2, eq - 2)] = line.substr(eq + 1);
                continue;
            }
            if (!columns)
            {
                if (line != "m,as_deg,precoder,engine,signal,self_interference,intercell,noise,rate_bps_hz,stderr_rate")
                    throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": unexpected column line");
                columns = true;
                continue;
            }
            const auto f = split(line, ',');
            if (f.size() != 10)
                throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": expected 10 fields");
            SweepRow r;
            r.m = static_cast<std::size_t>(std::stoull(f[0]));
            r.as_deg = to_double(f[1], path, n);
            r.precoder = precoder_from_string(f[2]);
            r.engine = engine_from_string(f[3]);
            r.powers.source = r.engine;
            r.powers.signal = to_double(f[4], path, n);
            r.powers.self_interference = to_double(f[5], path, n);
            r.powers.intercell = to_double(f[6], path, n);
            r.powers.noise = to_double(f[7], path, n);
            r.powers.rate_bps_hz = to_double(f[8], path, n);
            r.powers.stderr_rate = to_double(f[9], path, n);
            t.rows.push_back(r);
        }
        return t;
    }

    void write_table_csv(const std::filesystem::path &path, const std::vector<std::pair<std::string, std::string>> &header,
                         const std::vector<std::string> &columns, const std::vector<std::vector<double>> &rows)
    {
        auto os = open_out(path);
        put_header(os, header);
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto &r : rows)
        {
            if (r.size() != columns.size())
                throw std::invalid_argument("write_table_csv: row width does not match columns");
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << format_double(r[i]);
            os << '\n';
        }
        close_out(os, path);
    }
}
