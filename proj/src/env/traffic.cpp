/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "env/traffic.hpp"

namespace xdiff::envsim {

int TrafficSource::poll(double t_ms, double dt_ms) {
  accum_bytes_ += profile_->offered_rate_bps(t_ms) * dt_ms / 8000.0;
  int packets = 0;
  while (accum_bytes_ >= packet_bytes_) {
    accum_bytes_ -= packet_bytes_;
    ++packets;
  }
  return packets;
}

void UEQueue::push(double arrival_ms, long bytes) {
  q_.push_back({arrival_ms, bytes});
  total_bytes_ += bytes;
}

long UEQueue::pop_bytes(long bytes, double now_ms, std::vector<double>* delays_ms) {
  long removed = 0;
  while (removed < bytes && !q_.empty()) {
    Packet& p = q_.front();
    const long take = std::min(p.remaining_bytes, bytes - removed);
    p.remaining_bytes -= take;
    removed += take;
    if (p.remaining_bytes == 0) {
      if (delays_ms) delays_ms->push_back(now_ms - p.arrival_ms);
      q_.pop_front();
    }
  }
  total_bytes_ -= removed;
  return removed;
}

long UEQueue::drop_bytes(long bytes) {
  long removed = 0;
  while (removed < bytes && !q_.empty()) {
    Packet& p = q_.front();
    const long take = std::min(p.remaining_bytes, bytes - removed);
    p.remaining_bytes -= take;
    removed += take;
    if (p.remaining_bytes == 0) q_.pop_front();
  }
  total_bytes_ -= removed;
  return removed;
}

}  // namespace xdiff::envsim
