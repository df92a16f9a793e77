/* tslint:disable */
/* eslint-disable */

/**
 * Exact chromatic number and an optimal coloring of `G(X_n, D)`.
 */
export function color_distance_graph(family: string, n: number, distances: string): string;

/**
 * Brute-force k-spectrum next to the closed form, where one exists.
 */
export function spectrum(family: string, n: number, k: number): string;

/**
 * Weak r-freeness of S in Z_n, with the r-coloring of Cay(Z_n, S) when free.
 */
export function weak_freeness(n: number, set: string, r: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly color_distance_graph: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly spectrum: (a: number, b: number, c: number, d: number) => [number, number];
    readonly weak_freeness: (a: number, b: number, c: number, d: number) => [number, number];
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
