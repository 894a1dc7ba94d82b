/** Deterministic backend: luminance-blob person detection plus a
 * proportions-based pose lifter.
 *
 * Detection thresholds the luma plane and groups foreground pixels into
 * connected components; each sufficiently large component becomes one
 * person candidate. Pose estimation places the 17 keypoints at canonical
 * anatomical fractions of the detection box (head near the top, ankles at
 * the bottom), with a small depth offset for the face, and scores every
 * keypoint with the component's fill ratio.
 */

import {
  BoundingBox,
  Detection,
  KEYPOINT_NAMES,
  PixelKeypoint,
} from "./types.js";

const LUMA_THRESHOLD = 100;
const MIN_COMPONENT_AREA = 40;

/** [xFraction of box width from center, yFraction of box height, zFraction] */
const BODY_PLAN: Record<(typeof KEYPOINT_NAMES)[number], [number, number, number]> = {
  nose: [0.0, 0.06, 0.06],
  left_eye: [0.05, 0.045, 0.05],
  right_eye: [-0.05, 0.045, 0.05],
  left_ear: [0.09, 0.06, 0.01],
  right_ear: [-0.09, 0.06, 0.01],
  left_shoulder: [0.2, 0.2, 0.0],
  right_shoulder: [-0.2, 0.2, 0.0],
  left_elbow: [0.26, 0.35, 0.0],
  right_elbow: [-0.26, 0.35, 0.0],
  left_wrist: [0.28, 0.5, 0.0],
  right_wrist: [-0.28, 0.5, 0.0],
  left_hip: [0.12, 0.52, 0.0],
  right_hip: [-0.12, 0.52, 0.0],
  left_knee: [0.13, 0.74, 0.0],
  right_knee: [-0.13, 0.74, 0.0],
  left_ankle: [0.13, 0.96, 0.0],
  right_ankle: [-0.13, 0.96, 0.0],
};

interface Component {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
  area: number;
}

function connectedComponents(
  luma: Uint8Array,
  width: number,
  height: number,
): Component[] {
  const seen = new Uint8Array(luma.length);
  const components: Component[] = [];
  const stack: number[] = [];
  for (let start = 0; start < luma.length; start++) {
    if (seen[start] || luma[start] < LUMA_THRESHOLD) {
      continue;
    }
    const component: Component = {
      minX: width,
      maxX: 0,
      minY: height,
      maxY: 0,
      area: 0,
    };
    stack.push(start);
    seen[start] = 1;
    while (stack.length > 0) {
      const idx = stack.pop()!;
      const x = idx % width;
      const y = (idx / width) | 0;
      component.minX = Math.min(component.minX, x);
      component.maxX = Math.max(component.maxX, x);
      component.minY = Math.min(component.minY, y);
      component.maxY = Math.max(component.maxY, y);
      component.area++;
      if (x > 0) visit(idx - 1);
      if (x < width - 1) visit(idx + 1);
      if (y > 0) visit(idx - width);
      if (y < height - 1) visit(idx + width);
    }
    if (component.area >= MIN_COMPONENT_AREA) {
      components.push(component);
    }
  }
  return components;

  function visit(idx: number): void {
    if (!seen[idx] && luma[idx] >= LUMA_THRESHOLD) {
      seen[idx] = 1;
      stack.push(idx);
    }
  }
}

export class SyntheticBackend {
  readonly name = "synthetic";

  detect(luma: Uint8Array, width: number, height: number): Detection[] {
    const detections = connectedComponents(luma, width, height).map((c) => {
      const box: BoundingBox = {
        x: c.minX,
        y: c.minY,
        width: c.maxX - c.minX + 1,
        height: c.maxY - c.minY + 1,
      };
      return { box, score: c.area / (box.width * box.height) };
    });
    detections.sort((a, b) => a.box.x - b.box.x);
    return detections;
  }

  estimatePose(
    _luma: Uint8Array,
    _width: number,
    _height: number,
    detection: Detection,
  ): PixelKeypoint[] {
    const { box, score } = detection;
    const cx = box.x + box.width / 2;
    return KEYPOINT_NAMES.map((name) => {
      const [fx, fy, fz] = BODY_PLAN[name];
      return {
        x: cx + fx * box.width,
        y: box.y + fy * box.height,
        z: fz * box.height,
        confidence: score,
      };
    });
  }
}
