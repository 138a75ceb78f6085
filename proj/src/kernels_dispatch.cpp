#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace sgmatch::kernels {

std::string_view to_string(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

const KernelTable* avx2_table() {
#if defined(SGMATCH_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(SGMATCH_HAVE_NEON)
    return &neon_table_unchecked();
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&scalar_table()};
    if (auto* t = avx2_table()) out.push_back(t);
    if (auto* t = neon_table()) out.push_back(t);
    return out;
}

namespace {

const KernelTable* find(Backend b) {
    for (auto* t : available_tables())
        if (t->backend == b) return t;
    return nullptr;
}

const KernelTable* initial_table() {
    if (const char* env = std::getenv("SGMATCH_KERNELS")) {
        const std::string name(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
            if (name == to_string(b))
                if (auto* t = find(b)) return t;
    }
    return available_tables().back();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{initial_table()};
    return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void select(Backend b) {
    const KernelTable* t = find(b);
    if (t == nullptr)
        throw std::invalid_argument("kernel backend unavailable: " + std::string(to_string(b)));
    slot().store(t, std::memory_order_release);
}

}  // namespace sgmatch::kernels
