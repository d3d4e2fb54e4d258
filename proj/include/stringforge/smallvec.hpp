#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <type_traits>

namespace stringforge {

// Vector with inline storage for up to N elements. T must be trivially
// copyable; the exact-arithmetic hot paths (limbs, packed monomials) never
// need more.
template <typename T, unsigned N>
class SmallVec {
    static_assert(std::is_trivially_copyable_v<T>);

  public:
    SmallVec() = default;

    SmallVec(const SmallVec& o) { assign(o.data(), o.size_); }
    SmallVec(SmallVec&& o) noexcept {
        if (o.heap_) {
            heap_ = o.heap_;
            cap_ = o.cap_;
            size_ = o.size_;
            o.heap_ = nullptr;
            o.size_ = 0;
            o.cap_ = N;
        } else {
            assign(o.inline_, o.size_);
        }
    }
    SmallVec& operator=(const SmallVec& o) {
        if (this != &o) assign(o.data(), o.size_);
        return *this;
    }
    SmallVec& operator=(SmallVec&& o) noexcept {
        if (this == &o) return *this;
        delete[] heap_;
        heap_ = nullptr;
        cap_ = N;
        if (o.heap_) {
            heap_ = o.heap_;
            cap_ = o.cap_;
            size_ = o.size_;
            o.heap_ = nullptr;
            o.size_ = 0;
            o.cap_ = N;
        } else {
            assign(o.inline_, o.size_);
        }
        return *this;
    }
    ~SmallVec() { delete[] heap_; }

    SmallVec(std::initializer_list<T> xs) {
        reserve(static_cast<uint32_t>(xs.size()));
        for (const T& x : xs) push_back(x);
    }

    T* data() { return heap_ ? heap_ : inline_; }
    const T* data() const { return heap_ ? heap_ : inline_; }
    uint32_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    T& operator[](uint32_t i) { return data()[i]; }
    const T& operator[](uint32_t i) const { return data()[i]; }
    T& back() { return data()[size_ - 1]; }
    const T& back() const { return data()[size_ - 1]; }

    T* begin() { return data(); }
    T* end() { return data() + size_; }
    const T* begin() const { return data(); }
    const T* end() const { return data() + size_; }

    void clear() { size_ = 0; }

    void reserve(uint32_t n) {
        if (n <= cap_) return;
        uint32_t newcap = std::max(n, cap_ * 2);
        T* nh = new T[newcap];
        std::memcpy(nh, data(), size_ * sizeof(T));
        delete[] heap_;
        heap_ = nh;
        cap_ = newcap;
    }

    void push_back(const T& x) {
        if (size_ == cap_) reserve(size_ + 1);
        data()[size_++] = x;
    }

    void pop_back() {
        assert(size_ > 0);
        --size_;
    }

    void resize(uint32_t n, T fill = T()) {
        reserve(n);
        for (uint32_t i = size_; i < n; ++i) data()[i] = fill;
        size_ = n;
    }

    void assign(const T* src, uint32_t n) {
        if (n > cap_) {
            delete[] heap_;
            heap_ = new T[n];
            cap_ = n;
        }
        std::memcpy(data(), src, n * sizeof(T));
        size_ = n;
    }

    friend bool operator==(const SmallVec& a, const SmallVec& b) {
        return a.size_ == b.size_ &&
               std::memcmp(a.data(), b.data(), a.size_ * sizeof(T)) == 0;
    }

  private:
    T inline_[N];
    T* heap_ = nullptr;
    uint32_t size_ = 0;
    uint32_t cap_ = N;
};

}  // namespace stringforge
