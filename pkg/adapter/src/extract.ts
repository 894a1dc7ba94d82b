/** Orchestrates video -> detections -> tracks -> poses -> scene document. */

import { loadBackend, PoseBackend } from "./backend.js";
import { trackDetections } from "./tracker.js";
import {
  AdapterConfig,
  Detection,
  KEYPOINT_NAMES,
  SceneDocument,
  SceneFrame,
  TrackCountMismatchError,
  TrackedDetection,
} from "./types.js";
import { LumaVideo, readY4m } from "./y4m.js";

/** Tracks must appear in at least this share of frames to count as a person. */
const STABLE_PRESENCE = 0.5;

function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = sorted.length >> 1;
  return sorted.length % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

interface FrameTrack {
  detection: Detection;
  trackId: string;
}

function selectTracks(
  presence: Map<string, number>,
  frameCount: number,
  config: AdapterConfig,
): string[] {
  const stable = [...presence.entries()]
    .filter(([, hits]) => hits >= STABLE_PRESENCE * frameCount)
    .map(([id]) => id)
    .sort();
  const mapped = Object.keys(config.trackMap);
  if (mapped.length > 0) {
    const missing = mapped.filter((id) => !stable.includes(id));
    if (missing.length > 0) {
      throw new TrackCountMismatchError(
        `mapped tracks not stable: ${missing.join(", ")} ` +
          `(stable tracks: ${stable.join(", ") || "none"})`,
      );
    }
    return mapped.sort();
  }
  if (stable.length !== config.performers) {
    throw new TrackCountMismatchError(
      `expected ${config.performers} performers, found ${stable.length} ` +
        `stable tracks [${stable.join(", ")}]`,
    );
  }
  return stable;
}

export function collectTrackedDetections(
  video: LumaVideo,
  backend: PoseBackend,
): { perFrame: Map<string, FrameTrack>[]; presence: Map<string, number> } {
  const detectionsPerFrame = video.frames.map((luma) =>
    backend.detect(luma, video.width, video.height),
  );
  const { assignments, presence } = trackDetections(
    detectionsPerFrame,
    video.width,
    video.height,
  );
  const perFrame = detectionsPerFrame.map((detections, frame) => {
    const byTrack = new Map<string, FrameTrack>();
    for (const [index, trackId] of assignments[frame]) {
      byTrack.set(trackId, { detection: detections[index], trackId });
    }
    return byTrack;
  });
  return { perFrame, presence };
}

/** Converts estimator pixel space (y down) to the canonical y-up frame,
 * normalized by the track's median detection height. */
function toCanonicalFrame(
  keypoints: TrackedDetection["keypoints"],
  imageWidth: number,
  imageHeight: number,
  scale: number,
  threshold: number,
): SceneFrame {
  const frame = {} as SceneFrame;
  KEYPOINT_NAMES.forEach((name, i) => {
    const kp = keypoints[i];
    frame[name] = [
      (kp.x - imageWidth / 2) / scale,
      (imageHeight - kp.y) / scale,
      kp.z / scale,
      kp.confidence >= threshold,
    ];
  });
  return frame;
}

function invalidFrame(): SceneFrame {
  const frame = {} as SceneFrame;
  for (const name of KEYPOINT_NAMES) {
    frame[name] = [0, 0, 0, false];
  }
  return frame;
}

export function extractScene(config: AdapterConfig): SceneDocument {
  const backend = loadBackend(config.backend);
  const video = readY4m(config.videoPath);
  const { perFrame, presence } = collectTrackedDetections(video, backend);
  const tracks = selectTracks(presence, video.frames.length, config);

  const scales = new Map<string, number>();
  for (const trackId of tracks) {
    const heights = perFrame
      .filter((frame) => frame.has(trackId))
      .map((frame) => frame.get(trackId)!.detection.box.height);
    scales.set(trackId, median(heights));
  }

  const performers: Record<string, SceneFrame[]> = {};
  const performerOf = (trackId: string) => config.trackMap[trackId] ?? trackId;
  for (const trackId of [...tracks].sort((a, b) =>
    performerOf(a).localeCompare(performerOf(b)),
  )) {
    const frames: SceneFrame[] = [];
    for (let t = 0; t < video.frames.length; t++) {
      const entry = perFrame[t].get(trackId);
      if (entry === undefined) {
        // undetected this frame: keep the slot, mark everything invalid
        frames.push(invalidFrame());
        continue;
      }
      const keypoints = backend.estimatePose(
        video.frames[t],
        video.width,
        video.height,
        entry.detection,
      );
      frames.push(
        toCanonicalFrame(
          keypoints,
          video.width,
          video.height,
          scales.get(trackId)!,
          config.confidenceThreshold,
        ),
      );
    }
    performers[performerOf(trackId)] = frames;
  }

  const fallbackId = config.videoPath
    .replace(/\\/g, "/")
    .split("/")
    .pop()!
    .replace(/\.[^.]*$/, "");
  return {
    scene_id: config.sceneId ?? fallbackId,
    kind: config.kind,
    fps: video.fps,
    performers,
  };
}

export function renderScene(scene: SceneDocument): string {
  return JSON.stringify(scene) + "\n";
}
