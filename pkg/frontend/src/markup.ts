/** String-built SVG/HTML helpers. Views render to markup strings so the
 * rendering path is a pure function of state; selected compounds are
 * tagged with data attributes that can be read back verbatim.
 */

export function escapeXml(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export type Attrs = Record<string, string | number | boolean | null | undefined>;

export function tag(name: string, attrs: Attrs, children = ""): string {
  const parts: string[] = [name];
  for (const [key, value] of Object.entries(attrs)) {
    if (value === undefined || value === null || value === false) continue;
    const encoded = value === true ? "true" : escapeXml(String(value));
    parts.push(`${key}="${encoded}"`);
  }
  if (children === "") return `<${parts.join(" ")}/>`;
  return `<${parts.join(" ")}>${children}</${name}>`;
}

/** Compound ids marked selected in a rendered view.
 *
 * Views annotate elements with either data-id + data-selected="true"
 * (one compound per element) or data-selected-ids="a,b" (aggregated
 * cells). The union over both is the view's notion of the selection.
 */
export function selectedIds(markup: string): Set<string> {
  const out = new Set<string>();
  const single = /<[^>]*data-id="([^"]*)"[^>]*data-selected="true"[^>]*>/g;
  for (const match of markup.matchAll(single)) {
    out.add(match[1]);
  }
  const flippedOrder = /<[^>]*data-selected="true"[^>]*data-id="([^"]*)"[^>]*>/g;
  for (const match of markup.matchAll(flippedOrder)) {
    out.add(match[1]);
  }
  const grouped = /data-selected-ids="([^"]*)"/g;
  for (const match of markup.matchAll(grouped)) {
    for (const id of match[1].split(",")) {
      if (id.length > 0) out.add(id);
    }
  }
  return out;
}

/** Compound ids tagged as user-added in a rendered view. */
export function addedIds(markup: string): Set<string> {
  const out = new Set<string>();
  const pattern = /<[^>]*data-added="true"[^>]*>/g;
  for (const match of markup.matchAll(pattern)) {
    const id = /data-id="([^"]*)"/.exec(match[0]);
    if (id) out.add(id[1]);
  }
  return out;
}
