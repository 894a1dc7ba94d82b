/** Nearest-centroid track assignment across frames.
 *
 * Track ids are stable for the same person as long as their detection
 * moves less than the match radius between consecutive frames; ids are
 * assigned in first-seen order (left to right within a frame).
 */

import { BoundingBox, Detection } from "./types.js";

interface Track {
  id: string;
  cx: number;
  cy: number;
  /** frames in which this track was detected */
  hits: number;
}

function center(box: BoundingBox): [number, number] {
  return [box.x + box.width / 2, box.y + box.height / 2];
}

export interface TrackerResult {
  /** detection index -> track id, per frame */
  assignments: Map<number, string>[];
  /** track id -> number of frames with a detection */
  presence: Map<string, number>;
}

export class CentroidTracker {
  private tracks: Track[] = [];
  private nextId = 1;
  private readonly maxDistance: number;

  constructor(frameWidth: number, frameHeight: number) {
    this.maxDistance = 0.25 * Math.max(frameWidth, frameHeight);
  }

  /** Assigns each detection of one frame to a track id. */
  step(detections: Detection[]): Map<number, string> {
    const assignment = new Map<number, string>();
    const taken = new Set<string>();
    for (let i = 0; i < detections.length; i++) {
      const [cx, cy] = center(detections[i].box);
      let best: Track | null = null;
      let bestDist = this.maxDistance;
      for (const track of this.tracks) {
        if (taken.has(track.id)) {
          continue;
        }
        const dist = Math.hypot(track.cx - cx, track.cy - cy);
        if (dist < bestDist) {
          best = track;
          bestDist = dist;
        }
      }
      if (best === null) {
        best = { id: `t${this.nextId++}`, cx, cy, hits: 0 };
        this.tracks.push(best);
      }
      best.cx = cx;
      best.cy = cy;
      best.hits++;
      taken.add(best.id);
      assignment.set(i, best.id);
    }
    return assignment;
  }

  presence(): Map<string, number> {
    return new Map(this.tracks.map((t) => [t.id, t.hits]));
  }
}

export function trackDetections(
  framesOfDetections: Detection[][],
  frameWidth: number,
  frameHeight: number,
): TrackerResult {
  const tracker = new CentroidTracker(frameWidth, frameHeight);
  const assignments = framesOfDetections.map((dets) => tracker.step(dets));
  return { assignments, presence: tracker.presence() };
}
