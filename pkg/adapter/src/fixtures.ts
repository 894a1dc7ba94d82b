/** Generates the bundled sample clips (deterministic, no binaries in git).
 *
 *   node dist/fixtures.js <output-dir>
 *
 * person.y4m       one bright figure, 2 s at 24 fps, parabolic hop
 * two_person.y4m   two figures hopping in unison
 * empty.y4m        background only
 */

import { mkdirSync } from "node:fs";
import { join } from "node:path";

import { writeY4m } from "./y4m.js";

const BACKGROUND = 16;
const FOREGROUND = 210;
const FPS = 24;

function fillRect(
  luma: Uint8Array,
  width: number,
  height: number,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): void {
  for (let y = Math.max(0, y0); y < Math.min(height, y1); y++) {
    for (let x = Math.max(0, x0); x < Math.min(width, x1); x++) {
      luma[y * width + x] = FOREGROUND;
    }
  }
}

/** Stick figure: head, torso, two leg bars; dy < 0 lifts it off the ground. */
function drawPerson(
  luma: Uint8Array,
  width: number,
  height: number,
  cx: number,
  dy: number,
): void {
  fillRect(luma, width, height, cx - 5, 6 + dy, cx + 5, 18 + dy); // head
  fillRect(luma, width, height, cx - 8, 18 + dy, cx + 8, 56 + dy); // torso + arms
  fillRect(luma, width, height, cx - 7, 56 + dy, cx - 2, 90 + dy); // left leg
  fillRect(luma, width, height, cx + 2, 56 + dy, cx + 7, 90 + dy); // right leg
}

function hop(frame: number, total: number): number {
  const center = (total - 1) / 2;
  const halfwidth = (total - 1) / 4;
  const lift = 1 - ((frame - center) / halfwidth) ** 2;
  return -Math.round(6 * Math.max(0, lift));
}

function clip(
  width: number,
  height: number,
  frameCount: number,
  centers: number[],
): { width: number; height: number; fps: number; frames: Uint8Array[] } {
  const frames: Uint8Array[] = [];
  for (let t = 0; t < frameCount; t++) {
    const luma = new Uint8Array(width * height).fill(BACKGROUND);
    for (const cx of centers) {
      drawPerson(luma, width, height, cx, hop(t, frameCount));
    }
    frames.push(luma);
  }
  return { width, height, fps: FPS, frames };
}

const outDir = process.argv[2];
if (!outDir) {
  process.stderr.write("usage: node fixtures.js <output-dir>\n");
  process.exit(1);
}
mkdirSync(outDir, { recursive: true });
writeY4m(join(outDir, "person.y4m"), clip(64, 96, 48, [32]));
writeY4m(join(outDir, "two_person.y4m"), clip(112, 96, 48, [28, 84]));
writeY4m(join(outDir, "empty.y4m"), clip(64, 96, 12, []));
process.stdout.write(`${outDir}\n`);
