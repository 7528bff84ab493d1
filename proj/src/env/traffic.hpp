/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <deque>
#include <vector>

#include "core/types.hpp"

namespace xdiff::envsim {

/// Fixed-size packet source following a UE's offered-rate schedule. Bytes
/// accrue fractionally per subframe; whole packets are released.
class TrafficSource {
 public:
  TrafficSource() = default;
  TrafficSource(const UEProfile* profile, int packet_bytes)
      : profile_(profile), packet_bytes_(packet_bytes) {}

  /// Returns the number of whole packets released for the subframe that
  /// starts at `t_ms` and lasts `dt_ms`.
  int poll(double t_ms, double dt_ms);

  double offered_rate_bps(double t_ms) const { return profile_->offered_rate_bps(t_ms); }
  int packet_bytes() const { return packet_bytes_; }

 private:
  const UEProfile* profile_ = nullptr;
  int packet_bytes_ = 1500;
  double accum_bytes_ = 0.0;
};

struct Packet {
  double arrival_ms = 0.0;
  long remaining_bytes = 0;
};

/// FIFO byte queue with arrival timestamps; delay is measured per fully
/// dequeued packet.
class UEQueue {
 public:
  void push(double arrival_ms, long bytes);
  /// Dequeues up to `bytes`; appends the sojourn of each completed packet to
  /// `delays_ms`. Returns bytes actually removed.
  long pop_bytes(long bytes, double now_ms, std::vector<double>* delays_ms);
  /// Removes up to `bytes` from the head without delay accounting.
  long drop_bytes(long bytes);
  void clear() { q_.clear(); total_bytes_ = 0; }

  long total_bytes() const { return total_bytes_; }
  bool empty() const { return q_.empty(); }
  double head_age_ms(double now_ms) const {
    return q_.empty() ? 0.0 : now_ms - q_.front().arrival_ms;
  }

 private:
  std::deque<Packet> q_;
  long total_bytes_ = 0;
};

}  // namespace xdiff::envsim
