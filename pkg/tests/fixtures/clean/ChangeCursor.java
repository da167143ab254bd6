package app.ui;

import android.database.Cursor;
import android.widget.CursorAdapter;

public class ChangeCursor {
    private CursorAdapter adapter;

    public void reload(Cursor fresh) {
        adapter.changeCursor(fresh);
        adapter.notifyDataSetChanged();
    }
}
