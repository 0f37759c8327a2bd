/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

namespace ffb {

enum class TaskKind { classify, rotation, flip_h, flip_hv, jigsaw2x2 };

std::string to_string(TaskKind kind);
/// Throws ArgumentError for unknown names.
TaskKind task_kind_from_string(const std::string& s);

/// A supervised or pretext task: what is predicted and how many one-hot labels it needs.
struct TaskSpec {
  TaskKind kind = TaskKind::classify;
  int num_labels = 10;
};

/// classify → dataset_classes, rotation → 4, flip_h → 2, flip_hv → 4, jigsaw2x2 → 24.
TaskSpec make_task(TaskKind kind, int dataset_classes);

}  // namespace ffb
