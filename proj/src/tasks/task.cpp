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

#include "ffbench/tasks/task.hpp"

#include "ffbench/error.hpp"

namespace ffb {

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::classify: return "classify";
    case TaskKind::rotation: return "rotation";
    case TaskKind::flip_h: return "flip_h";
    case TaskKind::flip_hv: return "flip_hv";
    case TaskKind::jigsaw2x2: return "jigsaw2x2";
  }
  return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "classify") return TaskKind::classify;
  if (s == "rotation") return TaskKind::rotation;
  if (s == "flip_h") return TaskKind::flip_h;
  if (s == "flip_hv") return TaskKind::flip_hv;
  if (s == "jigsaw2x2" || s == "jigsaw") return TaskKind::jigsaw2x2;
  throw ArgumentError("unknown task '" + s + "'");
}

TaskSpec make_task(TaskKind kind, int dataset_classes) {
  switch (kind) {
    case TaskKind::classify:
      if (dataset_classes < 2) throw ArgumentError("classify task needs at least 2 classes");
      return {kind, dataset_classes};
    case TaskKind::rotation: return {kind, 4};
    case TaskKind::flip_h: return {kind, 2};
    case TaskKind::flip_hv: return {kind, 4};
    case TaskKind::jigsaw2x2: return {kind, 24};
  }
  throw ArgumentError("unknown task kind");
}

}  // namespace ffb
