// artifacts.hpp
// Deterministic artifact serialization: CSV writers with fixed significant
// digits, JSON helpers, and content hashing for the run manifest.

#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "rdcnet/analytics.hpp"
#include "rdcnet/network.hpp"
#include "rdcnet/rdc.hpp"
#include "rdcnet/synthetic.hpp"

namespace rdcnet {

// %.{digits}g with the C locale; used everywhere a float reaches a file.
std::string format_sig(double value, int significant_digits);
// Fixed two decimals, used for zeta columns.
std::string format_zeta(double zeta);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Per-window RDC values: `asset,zeta,rdc,circulability,transmissibility`,
// zeta with 2 decimals, values with 12 significant digits.
void write_rdc_csv(std::ostream& out, const RdcProfile& profile);

// `asset,zeta,rank`.
void write_rank_table_csv(std::ostream& out, const RankTable& table);

// `window,n_assets,avg_rank_std,avg_rank_std_norm,index_avg_return`.
void write_window_stats_csv(std::ostream& out, std::span<const WindowStats> stats);

// Full symmetric matrix with an `asset` header row and column, 10 significant digits.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

// Edge list `u,v,weight` with ticker endpoints.
void write_mst_csv(std::ostream& out, const MstTree& tree);

void write_price_csv(std::ostream& out, std::span<const PriceRecord> records);
void write_index_csv(std::ostream& out, std::span<const PriceObservation> observations);

}  // namespace rdcnet
