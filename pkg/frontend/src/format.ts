/**
 * Display formatting, aligned with the service's DOT rendering conventions:
 * numbers round to one decimal, categories print verbatim, shares list
 * "value share%" pairs, and missing data shows as "n/a".
 */

import type { AnnotationResult } from "./api.js";

export function formatCategory(value: string | number | boolean): string {
  if (typeof value === "boolean") return value ? "true" : "false";
  return String(value);
}

export function formatResult(result: AnnotationResult): string {
  switch (result.kind) {
    case "none":
      return "n/a";
    case "number":
      return (result.value as number).toFixed(1);
    case "category":
      return formatCategory(result.value as string | boolean);
    case "shares":
      return (result.values ?? [])
        .map((entry) => `${formatCategory(entry.value)} ${entry.share.toFixed(1)}%`)
        .join(", ");
  }
}

export function annotationLine(attribute: string, fn: string, result: AnnotationResult): string {
  return `${attribute} | ${fn} = ${formatResult(result)}`;
}

export function formatDegVar(degVar: number | null): string {
  return degVar === null ? "-" : `${degVar.toFixed(1)}%`;
}
