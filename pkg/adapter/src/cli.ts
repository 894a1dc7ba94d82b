/** CLI: extract canonical scene files from video clips.
 *
 *   node dist/cli.js extract --video clip.y4m --performers 2 \
 *     [--map t1=p01 --map t2=p02] [--threshold 0.3] [--kind jump] \
 *     [--scene-id my-scene] [--backend synthetic] --out out.scene.json
 */

import { mkdtempSync, renameSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { parseArgs } from "node:util";

import { extractScene, renderScene } from "./extract.js";
import { AdapterConfig, AdapterError, IoError, SceneKind } from "./types.js";

function usageError(message: string): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(1);
}

function parseConfig(argv: string[]): AdapterConfig {
  const { values, positionals } = parseArgs({
    args: argv,
    allowPositionals: true,
    options: {
      video: { type: "string" },
      performers: { type: "string" },
      out: { type: "string" },
      map: { type: "string", multiple: true },
      threshold: { type: "string", default: "0.3" },
      kind: { type: "string", default: "dance" },
      "scene-id": { type: "string" },
      backend: { type: "string", default: "synthetic" },
    },
  });
  if (positionals[0] !== "extract") {
    usageError(`unknown command '${positionals[0] ?? ""}' (expected: extract)`);
  }
  if (!values.video || !values.out || !values.performers) {
    usageError("--video, --performers and --out are required");
  }
  const performers = Number(values.performers);
  if (!Number.isInteger(performers) || performers < 1) {
    usageError(`--performers must be a positive integer, got ${values.performers}`);
  }
  const threshold = Number(values.threshold);
  if (!(threshold >= 0 && threshold <= 1)) {
    usageError(`--threshold must be in [0, 1], got ${values.threshold}`);
  }
  if (!["dance", "jump", "down"].includes(values.kind!)) {
    usageError(`--kind must be dance, jump or down, got ${values.kind}`);
  }
  const trackMap: Record<string, string> = {};
  for (const pair of values.map ?? []) {
    const eq = pair.indexOf("=");
    if (eq <= 0 || eq === pair.length - 1) {
      usageError(`--map expects TRACKID=PERFORMERID, got '${pair}'`);
    }
    trackMap[pair.slice(0, eq)] = pair.slice(eq + 1);
  }
  return {
    videoPath: values.video,
    performers,
    outPath: values.out,
    confidenceThreshold: threshold,
    trackMap,
    kind: values.kind as SceneKind,
    sceneId: values["scene-id"],
    backend: values.backend!,
  };
}

function writeAtomic(path: string, text: string): void {
  try {
    const dir = dirname(path) || ".";
    const tmp = join(mkdtempSync(join(tmpdir(), "scene-")), "out.json");
    writeFileSync(tmp, text);
    try {
      renameSync(tmp, path);
    } catch {
      // cross-device fallback: write directly in the target directory
      const sibling = join(dir, `.${Date.now()}.scene.tmp`);
      writeFileSync(sibling, text);
      renameSync(sibling, path);
    }
  } catch (err) {
    throw new IoError(`cannot write ${path}: ${(err as Error).message}`);
  }
}

export function main(argv: string[]): number {
  let config: AdapterConfig;
  try {
    config = parseConfig(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  try {
    const scene = extractScene(config);
    writeAtomic(config.outPath, renderScene(scene));
    process.stdout.write(`${config.outPath}\n`);
    return 0;
  } catch (err) {
    if (err instanceof AdapterError) {
      process.stderr.write(`${err.name}: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
