// SPDX-License-Identifier: Apache-2.0
#include "ezcasp/fd_solver.hpp"

namespace ezcasp {

std::uint64_t Domain::size() const {
	if (empty()) return 0;
	return static_cast<std::uint64_t>(hi_ - lo_) + 1 - holes_.size();
}

std::vector<std::int64_t> Domain::values() const {
	std::vector<std::int64_t> out;
	for (std::int64_t v = lo_; v <= hi_; ++v)
		if (!holes_.count(v)) out.push_back(v);
	return out;
}

std::int64_t Domain::next(std::int64_t v) const {
	std::int64_t n = std::max(v + 1, lo_);
	while (n <= hi_ && holes_.count(n)) ++n;
	return n;
}

void Domain::normalize() {
	while (lo_ <= hi_ && holes_.count(lo_)) holes_.erase(lo_++);
	while (lo_ <= hi_ && holes_.count(hi_)) holes_.erase(hi_--);
	if (lo_ > hi_) {
		holes_.clear();
		return;
	}
	holes_.erase(holes_.begin(), holes_.lower_bound(lo_));
	holes_.erase(holes_.upper_bound(hi_), holes_.end());
}

bool Domain::set_min(std::int64_t v) {
	if (v <= lo_ || empty()) return false;
	lo_ = v;
	normalize();
	return true;
}

bool Domain::set_max(std::int64_t v) {
	if (v >= hi_ || empty()) return false;
	hi_ = v;
	normalize();
	return true;
}

bool Domain::remove(std::int64_t v) {
	if (!contains(v)) return false;
	holes_.insert(v);
	normalize();
	return true;
}

bool Domain::assign(std::int64_t v) {
	if (fixed() && lo_ == v) return false;
	if (!contains(v)) {
		lo_ = 1;
		hi_ = 0;
		holes_.clear();
		return true;
	}
	lo_ = hi_ = v;
	holes_.clear();
	return true;
}

} // namespace ezcasp
