// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdepth {

enum class Linkage { Complete, Single, Average };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view name);

// Agglomerative clustering of scalars under |a - b|, cut at `groups` clusters.
// Groups are numbered 1.. in order of first appearance, as cutree does.
std::vector<int> hclust_cut(std::span<const double> values, std::size_t groups, Linkage linkage);

// Largest number of points whose group maps to their label under a
// one-to-one assignment of groups to labels.
std::size_t best_label_agreement(const std::vector<int>& groups, const std::vector<std::string>& labels);

}  // namespace cdepth
