#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace durlab {

/// Flat `key = value` text blocks used for model parameter files, report
/// summaries, and run metadata. Vectors are comma separated, matrix rows
/// are joined with ';'.
class KvFile {
   public:
    KvFile() = default;

    static KvFile load(const std::string& path);
    static KvFile parse(const std::string& text);
    void save(const std::string& path) const;
    std::string to_string() const;

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, const Eigen::VectorXd& value);
    void set(const std::string& key, const Eigen::MatrixXd& value);

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    Eigen::VectorXd get_vector(const std::string& key) const;
    Eigen::MatrixXd get_matrix(const std::string& key) const;

    const std::vector<std::string>& keys() const { return order_; }

   private:
    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
};

/// FNV-1a hash of the canonical (sorted) key=value rendering; names run
/// output directories so reruns with identical configs collide on purpose.
std::string config_hash(const KvFile& kv);

}  // namespace durlab
