// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <type_traits>

#include "cep/error.hpp"

namespace cep {

// Append-only storage with stable addresses. The chunk directory has a fixed
// capacity, so growing never moves existing elements or the directory itself.
template <typename T, unsigned ChunkBits = 12, std::size_t MaxChunks = std::size_t{1} << 16>
class ChunkedArena {
    static_assert(std::is_trivially_copyable_v<T>);

public:
    static constexpr std::size_t kChunk = std::size_t{1} << ChunkBits;
    static constexpr std::size_t kCapacity = kChunk * MaxChunks;

    ChunkedArena() : directory_(std::make_unique_for_overwrite<T*[]>(MaxChunks)) {}
    ~ChunkedArena() { release(); }
    ChunkedArena(ChunkedArena&& other) noexcept
        : directory_(std::move(other.directory_)), chunks_(other.chunks_), size_(other.size_) {
        other.chunks_ = 0;
        other.size_ = 0;
    }
    ChunkedArena& operator=(ChunkedArena&& other) noexcept {
        if (this != &other) {
            release();
            directory_ = std::move(other.directory_);
            chunks_ = other.chunks_;
            size_ = other.size_;
            other.chunks_ = 0;
            other.size_ = 0;
        }
        return *this;
    }
    ChunkedArena(const ChunkedArena&) = delete;
    ChunkedArena& operator=(const ChunkedArena&) = delete;

    std::uint32_t push(const T& value) {
        if (size_ == chunks_ * kChunk) {
            if (chunks_ == MaxChunks) throw Error("output arena exhausted");
            directory_[chunks_++] = new T[kChunk];
        }
        const std::size_t i = size_++;
        directory_[i >> ChunkBits][i & (kChunk - 1)] = value;
        return static_cast<std::uint32_t>(i);
    }

    T& operator[](std::uint32_t i) { return directory_[i >> ChunkBits][i & (kChunk - 1)]; }
    const T& operator[](std::uint32_t i) const { return directory_[i >> ChunkBits][i & (kChunk - 1)]; }

    std::size_t size() const { return size_; }
    std::size_t reserved_bytes() const { return chunks_ * kChunk * sizeof(T); }

private:
    void release() {
        for (std::size_t c = 0; c < chunks_; ++c) delete[] directory_[c];
        chunks_ = 0;
    }

    std::unique_ptr<T*[]> directory_;
    std::size_t chunks_ = 0;
    std::size_t size_ = 0;
};

} // namespace cep
