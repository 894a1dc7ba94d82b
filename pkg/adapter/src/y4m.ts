/** Minimal YUV4MPEG2 (.y4m) reader and writer.
 *
 * Only the luma plane is decoded; chroma is skipped on read and written
 * flat (neutral gray) on write. Supported color spaces: C420 variants,
 * C422, C444 and Cmono.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { IoError } from "./types.js";

export interface LumaVideo {
  width: number;
  height: number;
  fps: number;
  /** one luma plane per frame, row-major width*height bytes */
  frames: Uint8Array[];
}

const MAGIC = "YUV4MPEG2";
const FRAME_MARKER = "FRAME";

function chromaBytes(colorSpace: string, width: number, height: number): number {
  if (colorSpace.startsWith("C420")) {
    return 2 * ((width / 2) * (height / 2));
  }
  if (colorSpace.startsWith("C422")) {
    return 2 * ((width / 2) * height);
  }
  if (colorSpace.startsWith("C444")) {
    return 2 * (width * height);
  }
  if (colorSpace.startsWith("Cmono")) {
    return 0;
  }
  throw new IoError(`unsupported y4m color space ${colorSpace}`);
}

export function parseY4m(data: Buffer): LumaVideo {
  const headerEnd = data.indexOf(0x0a);
  if (headerEnd < 0) {
    throw new IoError("y4m: missing header line");
  }
  const header = data.subarray(0, headerEnd).toString("ascii");
  const fields = header.split(" ");
  if (fields[0] !== MAGIC) {
    throw new IoError(`y4m: bad magic ${fields[0]}`);
  }
  let width = 0;
  let height = 0;
  let fps = 0;
  let colorSpace = "C420jpeg";
  for (const field of fields.slice(1)) {
    const tag = field[0];
    const value = field.slice(1);
    if (tag === "W") width = Number(value);
    else if (tag === "H") height = Number(value);
    else if (tag === "F") {
      const [num, den] = value.split(":").map(Number);
      fps = num / den;
    } else if (tag === "C") colorSpace = field;
  }
  if (!(width > 0 && height > 0 && fps > 0)) {
    throw new IoError(`y4m: incomplete header ${header}`);
  }

  const lumaSize = width * height;
  const skip = chromaBytes(colorSpace, width, height);
  const frames: Uint8Array[] = [];
  let offset = headerEnd + 1;
  while (offset < data.length) {
    const lineEnd = data.indexOf(0x0a, offset);
    if (lineEnd < 0) {
      throw new IoError("y4m: truncated frame header");
    }
    const marker = data.subarray(offset, lineEnd).toString("ascii");
    if (!marker.startsWith(FRAME_MARKER)) {
      throw new IoError(`y4m: expected FRAME, got ${marker}`);
    }
    const start = lineEnd + 1;
    const end = start + lumaSize;
    if (end + skip > data.length) {
      throw new IoError("y4m: truncated frame payload");
    }
    frames.push(new Uint8Array(data.subarray(start, end)));
    offset = end + skip;
  }
  return { width, height, fps, frames };
}

export function readY4m(path: string): LumaVideo {
  let data: Buffer;
  try {
    data = readFileSync(path);
  } catch (err) {
    throw new IoError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseY4m(data);
}

/** Writes C420jpeg with neutral chroma; width and height must be even. */
export function writeY4m(path: string, video: LumaVideo): void {
  const { width, height, fps, frames } = video;
  const header = `${MAGIC} W${width} H${height} F${Math.round(fps)}:1 Ip A1:1 C420jpeg\n`;
  const chroma = new Uint8Array((width / 2) * (height / 2)).fill(128);
  const parts: Uint8Array[] = [Buffer.from(header, "ascii")];
  for (const luma of frames) {
    parts.push(Buffer.from(`${FRAME_MARKER}\n`, "ascii"), luma, chroma, chroma);
  }
  writeFileSync(path, Buffer.concat(parts));
}
