#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <vector>

#include "br/errors.hpp"

namespace br {

enum class WorkspaceKind { doubles, ints };

/// Point-in-time view of the ledger counters.
struct LedgerSnapshot {
    std::int64_t live_doubles = 0;
    std::int64_t peak_doubles = 0;
    std::int64_t live_ints = 0;
    std::int64_t peak_ints = 0;
    std::int64_t limit_doubles = 0;
    std::int64_t limit_ints = 0;

    /// Size in bytes of the full queried workspace (8-byte doubles,
    /// 4-byte ints), i.e. the contract limits rather than the peaks.
    std::int64_t limit_bytes() const { return limit_doubles * 8 + limit_ints * 4; }
};

/// Running account of persistent solver storage. The limits encode the
/// linear-state contract: 16N double entries and 7N integer entries for a
/// solve of order N. Any allocation that would push a live counter past
/// its limit throws BudgetExceeded. Counter updates are serialized so the
/// counts are exact under any worker interleaving.
class WorkspaceLedger {
public:
    explicit WorkspaceLedger(std::size_t n)
        : limit_doubles_(16 * static_cast<std::int64_t>(n)),
          limit_ints_(7 * static_cast<std::int64_t>(n)) {}

    void alloc(WorkspaceKind kind, std::int64_t count);
    void release(WorkspaceKind kind, std::int64_t count);

    LedgerSnapshot snapshot() const;

    std::int64_t limit(WorkspaceKind kind) const {
        return kind == WorkspaceKind::doubles ? limit_doubles_ : limit_ints_;
    }

private:
    mutable std::mutex mutex_;
    std::int64_t live_doubles_ = 0;
    std::int64_t peak_doubles_ = 0;
    std::int64_t live_ints_ = 0;
    std::int64_t peak_ints_ = 0;
    std::int64_t limit_doubles_;
    std::int64_t limit_ints_;
};

namespace detail {
template <typename T>
constexpr WorkspaceKind kind_of() {
    return sizeof(T) == sizeof(double) && std::is_floating_point_v<T>
               ? WorkspaceKind::doubles
               : WorkspaceKind::ints;
}
} // namespace detail

/// RAII array charged against a ledger for its whole lifetime. T must be
/// double (charged as doubles) or an integer type (charged as ints).
template <typename T>
class LedgerArray {
public:
    LedgerArray() = default;
    LedgerArray(WorkspaceLedger& ledger, std::size_t count, T fill = T{})
        : ledger_(&ledger), count_(static_cast<std::int64_t>(count)) {
        ledger_->alloc(detail::kind_of<T>(), count_);
        data_.assign(count, fill);
    }
    ~LedgerArray() { reset(); }

    LedgerArray(const LedgerArray&) = delete;
    LedgerArray& operator=(const LedgerArray&) = delete;
    LedgerArray(LedgerArray&& other) noexcept { swap(other); }
    LedgerArray& operator=(LedgerArray&& other) noexcept {
        reset();
        swap(other);
        return *this;
    }

    void reset() {
        if (ledger_) {
            ledger_->release(detail::kind_of<T>(), count_);
            ledger_ = nullptr;
        }
        count_ = 0;
        data_.clear();
        data_.shrink_to_fit();
    }

    std::span<T> span() { return {data_.data(), data_.size()}; }
    std::span<const T> span() const { return {data_.data(), data_.size()}; }
    std::span<T> slice(std::size_t offset, std::size_t count) {
        return span().subspan(offset, count);
    }
    T* data() { return data_.data(); }
    std::size_t size() const { return data_.size(); }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

private:
    void swap(LedgerArray& other) {
        std::swap(ledger_, other.ledger_);
        std::swap(count_, other.count_);
        data_.swap(other.data_);
    }

    WorkspaceLedger* ledger_ = nullptr;
    std::int64_t count_ = 0;
    std::vector<T> data_;
};

} // namespace br
