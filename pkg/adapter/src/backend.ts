/** Pluggable detector + pose-estimator backends.
 *
 * The pipeline shape is fixed (per-frame person detection, tracking, then
 * per-person pose estimation on the detected region); the models behind it
 * are swappable. This build bundles only the deterministic "synthetic"
 * backend, which handles high-contrast figures such as the generated
 * sample clips; ML backends plug in behind the same interface.
 */

import { SyntheticBackend } from "./synthetic.js";
import { BackendUnavailableError, Detection, PixelKeypoint } from "./types.js";

export interface PoseBackend {
  readonly name: string;
  /** Person candidates in one luma frame, sorted left to right. */
  detect(luma: Uint8Array, width: number, height: number): Detection[];
  /** 17 keypoints (pixel x/y, depth z, confidence) for one detection. */
  estimatePose(
    luma: Uint8Array,
    width: number,
    height: number,
    detection: Detection,
  ): PixelKeypoint[];
}

const ML_BACKENDS = new Set(["movenet", "mediapipe", "yolo-pose"]);

export function loadBackend(name: string): PoseBackend {
  if (name === "synthetic") {
    return new SyntheticBackend();
  }
  if (ML_BACKENDS.has(name)) {
    throw new BackendUnavailableError(
      `backend '${name}' needs a model runtime that is not bundled; ` +
        `install it separately or use 'synthetic'`,
    );
  }
  throw new BackendUnavailableError(`unknown backend '${name}'`);
}
