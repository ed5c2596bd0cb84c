/* tslint:disable */
/* eslint-disable */

/**
 * `‖φ‖² / det(ff*)^μ` along the ray `2^k · dir`; `mu < 0` picks the default.
 */
export function briancon_skoda_profile(n: number, matrix: string, phi: string, mu: number, dir: string, steps: number): string;

/**
 * Solves `P Q = φ` for a single row `P`; `cap < 0` means automatic.
 */
export function divide(n: number, matrix: string, phi: string, cap: number): string;

/**
 * The Łojasiewicz left-hand side times `(1 + |z|²)^exponent` along the ray.
 */
export function lojasiewicz_profile(n: number, matrix: string, exponent: number, dir: string, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly briancon_skoda_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly divide: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly lojasiewicz_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
