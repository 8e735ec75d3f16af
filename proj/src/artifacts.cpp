#include "rdcnet/artifacts.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "rdcnet/common.hpp"

namespace rdcnet {

std::string format_sig(double value, int significant_digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return std::string(buf);
}

std::string format_zeta(double zeta) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", zeta);
    return std::string(buf);
}

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned len) {
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0x0f]);
    }
    return out;
}

struct CtxFree {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (ctx == nullptr || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw ComputeError("sha256 digest failed");
    }
    return digest_to_hex(digest, len);
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "' for hashing");
    }
    std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
    if (ctx == nullptr || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw ComputeError("sha256 digest failed");
    }
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        if (EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount())) != 1) {
            throw ComputeError("sha256 digest failed");
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw ComputeError("sha256 digest failed");
    }
    return digest_to_hex(digest, len);
}

void write_rdc_csv(std::ostream& out, const RdcProfile& profile) {
    out << "asset,zeta,rdc,circulability,transmissibility\n";
    const auto n = profile.rdc.rows();
    const auto m = profile.rdc.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < m; ++c) {
            out << profile.assets[static_cast<std::size_t>(i)] << ','
                << format_zeta(profile.zetas[static_cast<std::size_t>(c)]) << ','
                << format_sig(profile.rdc(i, c), 12) << ','
                << format_sig(profile.circulability(i, c), 12) << ','
                << format_sig(profile.transmissibility(i, c), 12) << '\n';
        }
    }
}

void write_rank_table_csv(std::ostream& out, const RankTable& table) {
    out << "asset,zeta,rank\n";
    const auto n = table.ranks.rows();
    const auto m = table.ranks.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < m; ++c) {
            out << table.assets[static_cast<std::size_t>(i)] << ','
                << format_zeta(table.zetas[static_cast<std::size_t>(c)]) << ','
                << table.ranks(i, c) << '\n';
        }
    }
}

void write_window_stats_csv(std::ostream& out, std::span<const WindowStats> stats) {
    out << "window,n_assets,avg_rank_std,avg_rank_std_norm,index_avg_return\n";
    for (const auto& w : stats) {
        out << w.window_id << ',' << w.n_assets << ',' << format_sig(w.avg_rank_std, 12) << ','
            << format_sig(w.avg_rank_std_normalized, 12) << ',';
        if (std::isnan(w.index_avg_daily_return)) {
            out << "NA";
        } else {
            out << format_sig(w.index_avg_daily_return, 12);
        }
        out << '\n';
    }
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
    out << "asset";
    for (const auto& a : matrix.assets) out << ',' << a;
    out << '\n';
    const auto n = matrix.rho.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        out << matrix.assets[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            out << ',' << format_sig(matrix.rho(i, j), 10);
        }
        out << '\n';
    }
}

void write_mst_csv(std::ostream& out, const MstTree& tree) {
    out << "u,v,weight\n";
    for (const auto& e : tree.edges) {
        out << tree.assets[static_cast<std::size_t>(e.u)] << ','
            << tree.assets[static_cast<std::size_t>(e.v)] << ',' << format_sig(e.weight, 12)
            << '\n';
    }
}

void write_price_csv(std::ostream& out, std::span<const PriceRecord> records) {
    out << "date,asset,close\n";
    for (const auto& rec : records) {
        out << rec.date.to_string() << ',' << rec.asset_id << ',' << format_sig(rec.close, 12)
            << '\n';
    }
}

void write_index_csv(std::ostream& out, std::span<const PriceObservation> observations) {
    out << "date,close\n";
    for (const auto& obs : observations) {
        out << obs.date.to_string() << ',' << format_sig(obs.close, 12) << '\n';
    }
}

}  // namespace rdcnet
