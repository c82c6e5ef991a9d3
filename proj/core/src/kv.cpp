#include "durlab/kv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"

namespace durlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

KvFile KvFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

KvFile KvFile::parse(const std::string& text) {
    KvFile kv;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        kv.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return kv;
}

void KvFile::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << to_string();
}

std::string KvFile::to_string() const {
    std::string out;
    for (const auto& k : order_) out += k + " = " + values_.at(k) + "\n";
    return out;
}

bool KvFile::has(const std::string& key) const { return values_.count(key) > 0; }

void KvFile::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
}

void KvFile::set(const std::string& key, double value) { set(key, format_double(value)); }

void KvFile::set(const std::string& key, const Eigen::VectorXd& value) {
    std::string s;
    for (Eigen::Index i = 0; i < value.size(); ++i) {
        if (i) s += ",";
        s += format_double(value[i]);
    }
    set(key, s);
}

void KvFile::set(const std::string& key, const Eigen::MatrixXd& value) {
    std::string s;
    for (Eigen::Index r = 0; r < value.rows(); ++r) {
        if (r) s += ";";
        for (Eigen::Index c = 0; c < value.cols(); ++c) {
            if (c) s += ",";
            s += format_double(value(r, c));
        }
    }
    set(key, s);
}

std::string KvFile::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError("missing key: '" + key + "'");
    return it->second;
}

double KvFile::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("junk");
        return v;
    } catch (const std::exception&) {
        throw ParseError("key '" + key + "': bad number '" + s + "'");
    }
}

double KvFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

Eigen::VectorXd KvFile::get_vector(const std::string& key) const {
    const std::string s = get_string(key);
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            vals.push_back(std::stod(trim(cell)));
        } catch (const std::exception&) {
            throw ParseError("key '" + key + "': bad vector element '" + cell + "'");
        }
    }
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

Eigen::MatrixXd KvFile::get_matrix(const std::string& key) const {
    const std::string s = get_string(key);
    std::vector<std::vector<double>> rows;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<double> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            try {
                r.push_back(std::stod(trim(cell)));
            } catch (const std::exception&) {
                throw ParseError("key '" + key + "': bad matrix element '" + cell + "'");
            }
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParseError("key '" + key + "': empty matrix");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw ParseError("key '" + key + "': ragged matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::string config_hash(const KvFile& kv) {
    std::vector<std::string> lines;
    for (const auto& k : kv.keys()) lines.push_back(k + "=" + kv.get_string(k));
    std::sort(lines.begin(), lines.end());
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (const auto& line : lines) {
        for (unsigned char c : line) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace durlab
