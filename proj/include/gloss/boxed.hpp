// Copyright 2026 The Gloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <memory>
#include <utility>

namespace gloss {

/// Optional value with heap storage and value semantics. Exists so that
/// recursive model types (a Locale with a parent Locale) can be declared
/// before they are complete. Copying deep-copies; comparison compares the
/// held values.
template <class T>
class Boxed {
public:
    Boxed() = default;
    Boxed(const T& value) : ptr_(std::make_unique<T>(value)) {}
    Boxed(T&& value) : ptr_(std::make_unique<T>(std::move(value))) {}

    Boxed(const Boxed& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
    Boxed(Boxed&&) noexcept = default;
    Boxed& operator=(const Boxed& other) {
        if (this != &other)
            ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
        return *this;
    }
    Boxed& operator=(Boxed&&) noexcept = default;
    ~Boxed() = default;

    bool has_value() const noexcept { return ptr_ != nullptr; }
    explicit operator bool() const noexcept { return has_value(); }

    const T& operator*() const { assert(ptr_); return *ptr_; }
    T& operator*() { assert(ptr_); return *ptr_; }
    const T* operator->() const { assert(ptr_); return ptr_.get(); }
    T* operator->() { assert(ptr_); return ptr_.get(); }
    const T* get() const noexcept { return ptr_.get(); }

    void reset() noexcept { ptr_.reset(); }

    friend bool operator==(const Boxed& a, const Boxed& b) {
        if (!a.ptr_ || !b.ptr_)
            return !a.ptr_ && !b.ptr_;
        return *a.ptr_ == *b.ptr_;
    }

private:
    std::unique_ptr<T> ptr_;
};

}  // namespace gloss
