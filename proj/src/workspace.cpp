#include "br/workspace.hpp"

#include <algorithm>
#include <string>

namespace br {

void WorkspaceLedger::alloc(WorkspaceKind kind, std::int64_t count) {
    if (count < 0)
        throw InvalidArgument("ledger: negative allocation");
    std::lock_guard<std::mutex> lock(mutex_);
    if (kind == WorkspaceKind::doubles) {
        if (live_doubles_ + count > limit_doubles_)
            throw BudgetExceeded("ledger: double workspace over 16N limit (" +
                                 std::to_string(live_doubles_ + count) + " > " +
                                 std::to_string(limit_doubles_) + ")");
        live_doubles_ += count;
        peak_doubles_ = std::max(peak_doubles_, live_doubles_);
    } else {
        if (live_ints_ + count > limit_ints_)
            throw BudgetExceeded("ledger: integer workspace over 7N limit (" +
                                 std::to_string(live_ints_ + count) + " > " +
                                 std::to_string(limit_ints_) + ")");
        live_ints_ += count;
        peak_ints_ = std::max(peak_ints_, live_ints_);
    }
}

void WorkspaceLedger::release(WorkspaceKind kind, std::int64_t count) {
    if (count < 0)
        throw InvalidArgument("ledger: negative release");
    std::lock_guard<std::mutex> lock(mutex_);
    auto& live = kind == WorkspaceKind::doubles ? live_doubles_ : live_ints_;
    if (count > live)
        throw InvalidArgument("ledger: release exceeds live count");
    live -= count;
}

LedgerSnapshot WorkspaceLedger::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    LedgerSnapshot s;
    s.live_doubles = live_doubles_;
    s.peak_doubles = peak_doubles_;
    s.live_ints = live_ints_;
    s.peak_ints = peak_ints_;
    s.limit_doubles = limit_doubles_;
    s.limit_ints = limit_ints_;
    return s;
}

} // namespace br
