#include "lix/koszul.hpp"

#include <algorithm>
#include <unordered_map>

#include "lix/error.hpp"

namespace lix {

Permutation Permutation::identity(int n) {
    Permutation p;
    p.images.resize(n);
    for (int k = 1; k <= n; ++k) p.images[k - 1] = k;
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (int k = 1; k <= n(); ++k) p.images[images[k - 1] - 1] = k;
    return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation p;
    p.images.resize(a.images.size());
    for (int k = 1; k <= a.n(); ++k) p.images[k - 1] = a(b(k));
    return p;
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 1 || v > n() || seen[v - 1]) return false;
        seen[v - 1] = true;
    }
    return true;
}

std::vector<Permutation> unshuffles(int i, int j) {
    int n = i + j;
    std::vector<Permutation> out;
    // Choose the first block as an ascending i-subset, lexicographically.
    std::vector<int> pick(i);
    for (int k = 0; k < i; ++k) pick[k] = k + 1;
    while (true) {
        Permutation p;
        p.images.reserve(n);
        std::vector<bool> used(n + 1, false);
        for (int v : pick) { p.images.push_back(v); used[v] = true; }
        for (int v = 1; v <= n; ++v)
            if (!used[v]) p.images.push_back(v);
        out.push_back(std::move(p));
        if (i == 0) break;
        // next combination
        int pos = i - 1;
        while (pos >= 0 && pick[pos] == n - (i - 1 - pos)) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int k = pos + 1; k < i; ++k) pick[k] = pick[k - 1] + 1;
    }
    return out;
}

int sort_sign(std::vector<int> word, std::vector<int> degrees) {
    // Bubble sort; each adjacent swap of entries with odd x odd degrees
    // flips the sign. Stable for equal entries.
    int sign = 1;
    int n = static_cast<int>(word.size());
    for (int pass = 0; pass + 1 < n; ++pass) {
        for (int k = 0; k + 1 < n; ++k) {
            if (word[k] > word[k + 1]) {
                if ((degrees[k] & 1) && (degrees[k + 1] & 1)) sign = -sign;
                std::swap(word[k], word[k + 1]);
                std::swap(degrees[k], degrees[k + 1]);
            }
        }
    }
    return sign;
}

int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    int n = sigma.n();
    if (static_cast<int>(degrees.size()) != n)
        throw Error(ErrorCode::ArityMismatch, "degree list does not match the permutation");

    thread_local std::unordered_map<std::string, int> memo;
    std::string key;
    key.reserve(2 * n);
    for (int k = 0; k < n; ++k) {
        key.push_back(static_cast<char>('0' + sigma.images[k]));
        key.push_back(static_cast<char>('0' + (degrees[k] & 1)));
    }
    if (n <= 9) {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    // Sign of unscrambling the word (x_{sigma(1)}, ..., x_{sigma(n)}).
    std::vector<int> word(n), degs(n);
    for (int k = 0; k < n; ++k) {
        word[k] = sigma.images[k];
        degs[k] = degrees[sigma.images[k] - 1];
    }
    int sign = sort_sign(std::move(word), std::move(degs));
    if (n <= 9) memo.emplace(std::move(key), sign);
    return sign;
}

}  // namespace lix
