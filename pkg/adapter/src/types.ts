/** Shared types for the video-to-keypoints adapter. */

export const KEYPOINT_NAMES = [
  "nose",
  "left_eye",
  "right_eye",
  "left_ear",
  "right_ear",
  "left_shoulder",
  "right_shoulder",
  "left_elbow",
  "right_elbow",
  "left_wrist",
  "right_wrist",
  "left_hip",
  "right_hip",
  "left_knee",
  "right_knee",
  "left_ankle",
  "right_ankle",
] as const;

export type KeypointName = (typeof KEYPOINT_NAMES)[number];

export type SceneKind = "dance" | "jump" | "down";

/** Pixel-space box, y grows downward. */
export interface BoundingBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** One keypoint in estimator space: pixels for x/y, pixel-scaled depth z. */
export interface PixelKeypoint {
  x: number;
  y: number;
  z: number;
  confidence: number;
}

export interface Detection {
  box: BoundingBox;
  /** fraction of the box covered by foreground pixels */
  score: number;
}

export interface TrackedDetection {
  frame: number;
  trackId: string;
  box: BoundingBox;
  keypoints: PixelKeypoint[];
}

export interface AdapterConfig {
  videoPath: string;
  performers: number;
  outPath: string;
  confidenceThreshold: number;
  /** explicit track-id to performer-id mapping; empty keeps track ids */
  trackMap: Record<string, string>;
  kind: SceneKind;
  sceneId?: string;
  backend: string;
}

/** Frame entry of the canonical scene document: name -> [x, y, z, visible]. */
export type SceneFrame = Record<KeypointName, [number, number, number, boolean]>;

export interface SceneDocument {
  scene_id: string;
  kind: SceneKind;
  fps: number;
  performers: Record<string, SceneFrame[]>;
}

export class AdapterError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

export class BackendUnavailableError extends AdapterError {}

export class TrackCountMismatchError extends AdapterError {}

export class IoError extends AdapterError {}
