// Copyright 2026 The qbnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QBNET_LABELED_TENSOR_H
#define QBNET_LABELED_TENSOR_H

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbnet/errors.h"

namespace qbn {

using cplx = std::complex<double>;

/// One tensor index: which variable it refers to and how many values it takes.
struct Axis {
    int label = 0;
    int dim = 1;
    bool operator==(const Axis &) const = default;
};

/// Default upper bound on the number of entries any dense object may hold.
inline constexpr size_t kDefaultDimensionCap = size_t{1} << 20;

inline size_t volume(std::span<const Axis> axes, size_t cap = std::numeric_limits<size_t>::max()) {
    size_t v = 1;
    for (const auto &a : axes) {
        if (a.dim < 1) {
            throw ArgumentError("axis " + std::to_string(a.label) + " has non-positive dimension");
        }
        if (v > cap / static_cast<size_t>(a.dim)) {
            throw CapacityError("tensor volume exceeds cap of " + std::to_string(cap) + " entries");
        }
        v *= static_cast<size_t>(a.dim);
    }
    return v;
}

namespace detail {

/// Visits every multi-index of `dims` in row-major order (last axis fastest), handing the
/// callback one running offset per stride set.
template <size_t N, typename F>
void walk(std::span<const int> dims, const std::array<std::vector<size_t>, N> &strides, size_t total, F &&f) {
    std::array<size_t, N> off{};
    std::vector<int> idx(dims.size(), 0);
    for (size_t n = 0; n < total; ++n) {
        f(n, off);
        for (size_t k = dims.size(); k-- > 0;) {
            ++idx[k];
            for (size_t j = 0; j < N; ++j) {
                off[j] += strides[j][k];
            }
            if (idx[k] < dims[k]) {
                break;
            }
            for (size_t j = 0; j < N; ++j) {
                off[j] -= strides[j][k] * static_cast<size_t>(dims[k]);
            }
            idx[k] = 0;
        }
    }
}

inline std::vector<size_t> row_major_strides(std::span<const Axis> axes) {
    std::vector<size_t> s(axes.size());
    size_t acc = 1;
    for (size_t k = axes.size(); k-- > 0;) {
        s[k] = acc;
        acc *= static_cast<size_t>(axes[k].dim);
    }
    return s;
}

inline std::vector<int> dims_of(std::span<const Axis> axes) {
    std::vector<int> d;
    d.reserve(axes.size());
    for (const auto &a : axes) {
        d.push_back(a.dim);
    }
    return d;
}

inline double magnitude_squared(double v) {
    return v * v;
}
inline double magnitude_squared(const cplx &v) {
    return std::norm(v);
}
inline double magnitude(double v) {
    return std::abs(v);
}
inline double magnitude(const cplx &v) {
    return std::abs(v);
}

}  // namespace detail

/// Dense tensor whose axes carry variable labels.
///
/// Axes are always stored in strictly ascending label order and the data is row-major in
/// that order, so two tensors over the same variables compare structurally. A tensor with
/// no axes is a scalar holding one entry.
template <typename T>
class LabeledTensor {
   public:
    /// The scalar 1.
    LabeledTensor() : data_{T(1)} {
    }

    LabeledTensor(std::vector<Axis> axes, std::vector<T> data) : axes_(std::move(axes)), data_(std::move(data)) {
        for (size_t k = 1; k < axes_.size(); ++k) {
            if (axes_[k - 1].label >= axes_[k].label) {
                throw ArgumentError("tensor axes must have distinct labels in ascending order");
            }
        }
        if (data_.size() != volume(axes_)) {
            throw ArgumentError(
                "tensor data has " + std::to_string(data_.size()) + " entries, axes require " +
                std::to_string(volume(axes_)));
        }
    }

    static LabeledTensor scalar(T value) {
        return LabeledTensor({}, {value});
    }

    static LabeledTensor filled(std::vector<Axis> axes, T value, size_t cap = kDefaultDimensionCap) {
        std::sort(axes.begin(), axes.end(), [](const Axis &a, const Axis &b) { return a.label < b.label; });
        size_t n = volume(axes, cap);
        return LabeledTensor(std::move(axes), std::vector<T>(n, value));
    }

    /// Builds a tensor from data laid out row-major in the given (arbitrary) axis order.
    static LabeledTensor from_axis_order(std::vector<Axis> axes, std::vector<T> data) {
        if (data.size() != volume(axes)) {
            throw ArgumentError("tensor data size does not match axes");
        }
        std::vector<size_t> order(axes.size());
        for (size_t k = 0; k < order.size(); ++k) {
            order[k] = k;
        }
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return axes[a].label < axes[b].label; });
        auto src_strides = detail::row_major_strides(axes);
        std::vector<Axis> sorted;
        std::array<std::vector<size_t>, 1> strides;
        for (size_t k : order) {
            sorted.push_back(axes[k]);
            strides[0].push_back(src_strides[k]);
        }
        for (size_t k = 1; k < sorted.size(); ++k) {
            if (sorted[k - 1].label == sorted[k].label) {
                throw ArgumentError("duplicate tensor label " + std::to_string(sorted[k].label));
            }
        }
        std::vector<T> out(data.size());
        auto dims = detail::dims_of(sorted);
        detail::walk(dims, strides, out.size(), [&](size_t n, const std::array<size_t, 1> &off) {
            out[n] = data[off[0]];
        });
        return LabeledTensor(std::move(sorted), std::move(out));
    }

    const std::vector<Axis> &axes() const {
        return axes_;
    }
    const std::vector<T> &data() const {
        return data_;
    }
    std::vector<T> &data() {
        return data_;
    }
    size_t rank() const {
        return axes_.size();
    }
    size_t size() const {
        return data_.size();
    }

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(axes_.size());
        for (const auto &a : axes_) {
            out.push_back(a.label);
        }
        return out;
    }

    std::optional<size_t> position(int label) const {
        for (size_t k = 0; k < axes_.size(); ++k) {
            if (axes_[k].label == label) {
                return k;
            }
        }
        return std::nullopt;
    }

    bool has_label(int label) const {
        return position(label).has_value();
    }

    std::vector<size_t> strides() const {
        return detail::row_major_strides(axes_);
    }

    /// Entry at a multi-index given in axis order.
    const T &at(std::span<const int> index) const {
        return data_[offset(index)];
    }
    T &at(std::span<const int> index) {
        return data_[offset(index)];
    }

    bool operator==(const LabeledTensor &) const = default;

   private:
    size_t offset(std::span<const int> index) const {
        if (index.size() != axes_.size()) {
            throw ArgumentError("index rank does not match tensor rank");
        }
        size_t off = 0;
        for (size_t k = 0; k < axes_.size(); ++k) {
            if (index[k] < 0 || index[k] >= axes_[k].dim) {
                throw ArgumentError("index out of range on label " + std::to_string(axes_[k].label));
            }
            off = off * static_cast<size_t>(axes_[k].dim) + static_cast<size_t>(index[k]);
        }
        return off;
    }

    std::vector<Axis> axes_;
    std::vector<T> data_;
};

using LabeledAmplitude = LabeledTensor<cplx>;
using ProbabilityTable = LabeledTensor<double>;

/// Pointwise product over shared labels, outer product over the rest.
template <typename T>
LabeledTensor<T> product(const LabeledTensor<T> &a, const LabeledTensor<T> &b, size_t cap = kDefaultDimensionCap) {
    std::vector<Axis> out;
    std::array<std::vector<size_t>, 2> strides;
    auto sa = a.strides();
    auto sb = b.strides();
    size_t i = 0, j = 0;
    const auto &aa = a.axes();
    const auto &ba = b.axes();
    while (i < aa.size() || j < ba.size()) {
        if (j == ba.size() || (i < aa.size() && aa[i].label < ba[j].label)) {
            out.push_back(aa[i]);
            strides[0].push_back(sa[i]);
            strides[1].push_back(0);
            ++i;
        } else if (i == aa.size() || ba[j].label < aa[i].label) {
            out.push_back(ba[j]);
            strides[0].push_back(0);
            strides[1].push_back(sb[j]);
            ++j;
        } else {
            if (aa[i].dim != ba[j].dim) {
                throw ArgumentError("label " + std::to_string(aa[i].label) + " has mismatched dimensions");
            }
            out.push_back(aa[i]);
            strides[0].push_back(sa[i]);
            strides[1].push_back(sb[j]);
            ++i;
            ++j;
        }
    }
    size_t n = volume(out, cap);
    std::vector<T> data(n);
    auto dims = detail::dims_of(out);
    const auto &da = a.data();
    const auto &db = b.data();
    detail::walk(dims, strides, n, [&](size_t k, const std::array<size_t, 2> &off) {
        data[k] = da[off[0]] * db[off[1]];
    });
    return LabeledTensor<T>(std::move(out), std::move(data));
}

/// Entrywise sum over the listed labels. Every listed label must be present.
template <typename T>
LabeledTensor<T> sum_over(const LabeledTensor<T> &t, std::span<const int> labels) {
    for (int l : labels) {
        if (!t.has_label(l)) {
            throw ArgumentError("cannot sum over unknown label " + std::to_string(l));
        }
    }
    std::vector<Axis> out;
    for (const auto &a : t.axes()) {
        if (std::find(labels.begin(), labels.end(), a.label) == labels.end()) {
            out.push_back(a);
        }
    }
    auto out_strides = detail::row_major_strides(out);
    std::array<std::vector<size_t>, 1> strides;
    size_t o = 0;
    for (const auto &a : t.axes()) {
        if (o < out.size() && out[o].label == a.label) {
            strides[0].push_back(out_strides[o++]);
        } else {
            strides[0].push_back(0);
        }
    }
    std::vector<T> data(volume(out), T(0));
    auto dims = detail::dims_of(t.axes());
    const auto &src = t.data();
    detail::walk(dims, strides, src.size(), [&](size_t k, const std::array<size_t, 1> &off) {
        data[off[0]] += src[k];
    });
    return LabeledTensor<T>(std::move(out), std::move(data));
}

/// Fixes `label` to `value` and drops that axis.
template <typename T>
LabeledTensor<T> slice(const LabeledTensor<T> &t, int label, int value) {
    auto pos = t.position(label);
    if (!pos) {
        throw ArgumentError("cannot slice unknown label " + std::to_string(label));
    }
    if (value < 0 || value >= t.axes()[*pos].dim) {
        throw ArgumentError("slice value out of range on label " + std::to_string(label));
    }
    auto src_strides = t.strides();
    std::vector<Axis> out;
    std::array<std::vector<size_t>, 1> strides;
    for (size_t k = 0; k < t.rank(); ++k) {
        if (k != *pos) {
            out.push_back(t.axes()[k]);
            strides[0].push_back(src_strides[k]);
        }
    }
    size_t base = static_cast<size_t>(value) * src_strides[*pos];
    std::vector<T> data(volume(out));
    auto dims = detail::dims_of(out);
    const auto &src = t.data();
    detail::walk(dims, strides, data.size(), [&](size_t k, const std::array<size_t, 1> &off) {
        data[k] = src[base + off[0]];
    });
    return LabeledTensor<T>(std::move(out), std::move(data));
}

/// Slices every label of `values` that the tensor carries; absent labels are ignored.
template <typename T>
LabeledTensor<T> restrict_to(const LabeledTensor<T> &t, const std::map<int, int> &values) {
    LabeledTensor<T> out = t;
    for (const auto &[label, value] : values) {
        if (out.has_label(label)) {
            out = slice(out, label, value);
        }
    }
    return out;
}

template <typename T>
double squared_norm(const LabeledTensor<T> &t) {
    double s = 0;
    for (const auto &v : t.data()) {
        s += detail::magnitude_squared(v);
    }
    return s;
}

template <typename T>
LabeledTensor<T> scaled(LabeledTensor<T> t, T factor) {
    for (auto &v : t.data()) {
        v *= factor;
    }
    return t;
}

/// Σ |t|² over every label not in `keep`, as a real table over `keep`.
template <typename T>
ProbabilityTable squared_marginal(const LabeledTensor<T> &t, std::span<const int> keep) {
    std::vector<double> mags;
    mags.reserve(t.size());
    for (const auto &v : t.data()) {
        mags.push_back(detail::magnitude_squared(v));
    }
    ProbabilityTable m(t.axes(), std::move(mags));
    std::vector<int> drop;
    for (const auto &a : t.axes()) {
        if (std::find(keep.begin(), keep.end(), a.label) == keep.end()) {
            drop.push_back(a.label);
        }
    }
    return sum_over(m, drop);
}

/// Largest entrywise |a - b|; the tensors must share axes.
template <typename T>
double max_abs_difference(const LabeledTensor<T> &a, const LabeledTensor<T> &b) {
    if (a.axes() != b.axes()) {
        throw ArgumentError("tensors have different axes");
    }
    double m = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, detail::magnitude(a.data()[k] - b.data()[k]));
    }
    return m;
}

}  // namespace qbn

#endif
